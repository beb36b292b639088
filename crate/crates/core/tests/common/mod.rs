#![allow(dead_code)]

pub mod kernel_oracle;
pub mod laws;

use std::sync::OnceLock;

use proptest::test_runner::{Config, RngSeed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tensor_recon::algebra::{AlgElement, GradedAlgebra};
use tensor_recon::blockmat::{BlockMatrix, Grid};
use tensor_recon::h4::build_h4;
use tensor_recon::{Field, FieldKind, Obj, Rational, RationalQuadruple};

pub const Q: FieldKind = FieldKind::Rational;

pub fn h4() -> &'static RationalQuadruple {
    static H4: OnceLock<RationalQuadruple> = OnceLock::new();
    H4.get_or_init(|| build_h4(&Q).expect("H4 builds"))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    rat(n, 1)
}

/// 500 cases from a fixed seed, no regression files.
pub fn laws_config(seed: u64) -> Config {
    Config { cases: 500, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

pub fn elem(alg: &GradedAlgebra<Rational>, name: &str) -> AlgElement<Rational> {
    AlgElement::basis(alg.index_of(name).unwrap_or_else(|| panic!("no basis element {name}")))
}

pub fn scaled(alg: &GradedAlgebra<Rational>, c: i64, name: &str) -> AlgElement<Rational> {
    elem(alg, name).scale(&int(c))
}

/// Random element of `e_i A e_j` with coefficients in -2..=2.
pub fn random_elem<S: Field>(alg: &GradedAlgebra<S>, field: &FieldKind, i: usize, j: usize, rng: &mut ChaCha8Rng) -> AlgElement<S> {
    let terms = alg.peirce_basis(i, j).iter().map(|&p| (p, S::from_int(rng.gen_range(-2..=2), field))).collect();
    AlgElement::from_terms(terms)
}

/// Random morphism `cols → rows`, i.e. of type `(rows, cols)`.
pub fn random_morphism<S: Field>(
    alg: &GradedAlgebra<S>,
    field: &FieldKind,
    rows: &Obj,
    cols: &Obj,
    rng: &mut ChaCha8Rng,
) -> BlockMatrix<S> {
    let (rg, cg) = (rows.grades(), cols.grades());
    let grid = Grid::from_fn(rows.size().max(1), cols.size().max(1), |r, c| match (rg.get(r), cg.get(c)) {
        (Some(&i), Some(&j)) => random_elem(alg, field, i, j, rng),
        _ => AlgElement::zero(),
    });
    BlockMatrix::from_grid(alg, rows.clone(), cols.clone(), grid).expect("homogeneous entries")
}

/// Random object with `1..=max_size` simple summands.
pub fn random_obj(n: usize, max_size: usize, rng: &mut ChaCha8Rng) -> Obj {
    let size = rng.gen_range(1..=max_size);
    let mut v = vec![0; n];
    for _ in 0..size {
        v[rng.gen_range(0..n)] += 1;
    }
    Obj(v)
}

/// Random invertible endomorphism of `m`: unitriangular plus scalar
/// diagonal, so invertibility is guaranteed.
pub fn random_automorphism<S: Field>(alg: &GradedAlgebra<S>, field: &FieldKind, m: &Obj, rng: &mut ChaCha8Rng) -> BlockMatrix<S> {
    let g = m.grades();
    let grid = Grid::from_fn(m.size().max(1), m.size().max(1), |r, c| {
        if g.is_empty() {
            AlgElement::zero()
        } else if r == c {
            let v = [1, -1, 2, 3][rng.gen_range(0..4)];
            AlgElement::basis(alg.idempotent(g[r])).scale(&S::from_int(v, field))
        } else if r < c {
            random_elem(alg, field, g[r], g[c], rng)
        } else {
            // strictly lower entries stay in the radical
            let x = random_elem(alg, field, g[r], g[c], rng);
            if g[r] == g[c] {
                AlgElement::zero()
            } else {
                x
            }
        }
    });
    BlockMatrix::from_grid(alg, m.clone(), m.clone(), grid).expect("homogeneous entries")
}

/// Where a single associator entry was perturbed: `a_{i,j,l}[row][col] += x_p`.
#[derive(Clone, Copy, Debug)]
pub struct Mutation {
    pub triple: [usize; 3],
    pub row: usize,
    pub col: usize,
    pub basis: usize,
}

/// Add `+1·x_p` to one random entry of one associator matrix, choosing `p`
/// in the Peirce component of that entry so the grading stays valid.
pub fn mutate_associator(q: &RationalQuadruple, rng: &mut ChaCha8Rng) -> (RationalQuadruple, Mutation) {
    let n = q.rank();
    let alg = &q.algebra;
    loop {
        let triple = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
        let a = q.assoc.get(triple[0], triple[1], triple[2]);
        let (rows, cols) = (a.row_type().grades(), a.col_type().grades());
        if rows.is_empty() || cols.is_empty() {
            continue;
        }
        let (row, col) = (rng.gen_range(0..rows.len()), rng.gen_range(0..cols.len()));
        let part = alg.peirce_basis(rows[row], cols[col]);
        if part.is_empty() {
            continue;
        }
        let basis = part[rng.gen_range(0..part.len())];
        let mut entries = a.to_rows();
        entries[row][col] = entries[row][col].add(&AlgElement::basis(basis));
        let mutated = BlockMatrix::from_rows(alg, a.row_type().clone(), a.col_type().clone(), entries).expect("graded");
        let mut out = q.clone();
        out.assoc.set(triple[0], triple[1], triple[2], mutated);
        return (out, Mutation { triple, row, col, basis });
    }
}
