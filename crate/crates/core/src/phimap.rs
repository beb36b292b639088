//! The splitting map `φ: A ⊗ A → M(R, A, I)` and the tensor product of
//! typed matrices built from it.

use rayon::prelude::*;

use crate::algebra::{AlgElement, GradedAlgebra};
use crate::blockmat::{outer_tensor, perm_matrix, pi_index_map, BlockMatrix, Grid};
use crate::error::{Error, Result};
use crate::fusion::{FusionRing, Obj};
use crate::linalg::{DenseMatrix, Field};
use crate::report::{Locus, Report};

/// Values of `φ` on pairs of basis elements. A pair `(p, q)` with `p` of
/// grade `(i', i)` and `q` of grade `(j', j)` maps to a `(c_{i'j'}, c_{ij})`
/// matrix; missing pairs are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiTable<S> {
    d: usize,
    values: Vec<Option<BlockMatrix<S>>>,
}

/// `(row type, column type)` that `φ(p ⊗ q)` must have.
pub fn phi_type<S: Field>(fusion: &FusionRing, alg: &GradedAlgebra<S>, p: usize, q: usize) -> (Obj, Obj) {
    let (pr, pc) = alg.grade(p);
    let (qr, qc) = alg.grade(q);
    (fusion.cvec(pr, qr), fusion.cvec(pc, qc))
}

impl<S: Field> PhiTable<S> {
    /// All-zero table.
    pub fn empty(alg: &GradedAlgebra<S>) -> Self {
        let d = alg.dim();
        PhiTable { d, values: vec![None; d * d] }
    }

    /// Build from explicit values; types are checked against the grading.
    pub fn from_values(
        fusion: &FusionRing,
        alg: &GradedAlgebra<S>,
        values: impl IntoIterator<Item = ((usize, usize), BlockMatrix<S>)>,
    ) -> Result<Self> {
        let mut table = Self::empty(alg);
        for ((p, q), v) in values {
            table.set(fusion, alg, p, q, v)?;
        }
        Ok(table)
    }

    pub fn set(&mut self, fusion: &FusionRing, alg: &GradedAlgebra<S>, p: usize, q: usize, v: BlockMatrix<S>) -> Result<()> {
        if p >= self.d || q >= self.d {
            return Err(Error::OutOfRange(format!("phi pair ({},{})", p + 1, q + 1)));
        }
        let (rt, ct) = phi_type(fusion, alg, p, q);
        if v.row_type() != &rt || v.col_type() != &ct {
            return Err(Error::TypeMismatch(format!(
                "phi({}⊗{}) has type ({}),({}) but the grading requires ({rt}),({ct})",
                alg.name(p),
                alg.name(q),
                v.row_type(),
                v.col_type()
            )));
        }
        self.values[p * self.d + q] = if v.is_zero() { None } else { Some(v) };
        Ok(())
    }

    /// Store a value without checking its type; [`check_phi`] reports
    /// mismatches as grading failures.
    pub fn set_unchecked(&mut self, p: usize, q: usize, v: BlockMatrix<S>) {
        self.values[p * self.d + q] = if v.is_zero() { None } else { Some(v) };
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// `φ(p ⊗ q)`, materializing zeros.
    pub fn get(&self, fusion: &FusionRing, alg: &GradedAlgebra<S>, p: usize, q: usize) -> BlockMatrix<S> {
        match &self.values[p * self.d + q] {
            Some(v) => v.clone(),
            None => {
                let (rt, ct) = phi_type(fusion, alg, p, q);
                BlockMatrix::zero(rt, ct)
            }
        }
    }

    /// Stored nonzero value, if any.
    pub fn value(&self, p: usize, q: usize) -> Option<&BlockMatrix<S>> {
        self.values[p * self.d + q].as_ref()
    }

    /// Nonzero entries `((p, q), value)`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &BlockMatrix<S>)> {
        let d = self.d;
        self.values.iter().enumerate().filter_map(move |(k, v)| v.as_ref().map(|v| ((k / d, k % d), v)))
    }

    /// `φ` of a homogeneous element of `A ⊗ A` given by its terms.
    pub fn apply(&self, row_type: &Obj, col_type: &Obj, terms: &[(usize, usize, S)]) -> BlockMatrix<S> {
        let mut acc = BlockMatrix::zero(row_type.clone(), col_type.clone());
        for (p, q, coeff) in terms {
            if let Some(v) = self.value(*p, *q) {
                debug_assert!(v.row_type() == row_type && v.col_type() == col_type);
                acc = acc.add(&v.scale(coeff)).expect("homogeneous terms share a type");
            }
        }
        acc
    }
}

/// Validate grading, `(φ1)`, `(φ2)` and multiplicativity.
pub fn check_phi<S: Field>(fusion: &FusionRing, alg: &GradedAlgebra<S>, phi: &PhiTable<S>) -> Report {
    let mut report = Report::new();
    let n = alg.rank();
    let d = alg.dim();

    let mut graded = 0;
    for ((p, q), v) in phi.entries() {
        graded += 1;
        let (rt, ct) = phi_type(fusion, alg, p, q);
        if v.row_type() != &rt || v.col_type() != &ct {
            report.fail("phi.grading", Locus::new("p,q", [p, q]), format!("type ({}),({})", v.row_type(), v.col_type()));
        }
    }
    report.pass_count("phi.grading", graded);
    if !report.is_ok() {
        return report;
    }

    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (alg.idempotent(i), alg.idempotent(j));
            let v = phi.get(fusion, alg, ei, ej);
            let want = BlockMatrix::identity(alg, &fusion.cvec(i, j));
            if v != want {
                report.fail("phi.idempotents", Locus::new("i,j", [i, j]), "phi(e_i⊗e_j) is not the identity".into());
            }
        }
    }
    report.pass_count("phi.idempotents", n * n);

    let unit = alg.idempotent(0);
    for a in 0..d {
        let expect = BlockMatrix::basis_element(alg, a);
        for (label, v) in [("1,a", phi.get(fusion, alg, unit, a)), ("a,1", phi.get(fusion, alg, a, unit))] {
            if v != expect {
                report.fail("phi.unit", Locus::from_vec(label, vec![0, a]), format!("phi of {} with the unit is not itself", alg.name(a)));
            }
        }
    }
    report.pass_count("phi.unit", 2 * d);

    // φ(pr ⊗ qs) = φ(p⊗q) φ(r⊗s) whenever the grades chain.
    let results: Vec<(usize, Vec<Locus>)> = (0..d)
        .into_par_iter()
        .map(|p| {
            let mut count = 0;
            let mut bad = Vec::new();
            for q in 0..d {
                let left = phi.get(fusion, alg, p, q);
                for r in alg.basis_with_row(alg.grade(p).1) {
                    let pr = alg.mul_basis(p, r);
                    for s in alg.basis_with_row(alg.grade(q).1) {
                        count += 1;
                        let right = phi.get(fusion, alg, r, s);
                        let prod = left.compose(alg, &right).expect("chained grades compose");
                        let qs = alg.mul_basis(q, s);
                        let terms = tensor_terms(pr, qs);
                        let lhs = phi.apply(prod.row_type(), prod.col_type(), &terms);
                        if lhs != prod {
                            bad.push(Locus::new("p,q,r,s", [p, q, r, s]));
                        }
                    }
                }
            }
            (count, bad)
        })
        .collect();
    let mut total = 0;
    for (count, bad) in results {
        total += count;
        for locus in bad {
            report.fail("phi.multiplicative", locus, "phi((p⊗q)(r⊗s)) differs from phi(p⊗q)phi(r⊗s)".into());
        }
    }
    report.pass_count("phi.multiplicative", total);
    report
}

fn tensor_terms<S: Field>(x: &AlgElement<S>, y: &AlgElement<S>) -> Vec<(usize, usize, S)> {
    let mut out = Vec::new();
    for (p, a) in x.terms() {
        for (q, b) in y.terms() {
            out.push((*p, *q, a.clone() * b.clone()));
        }
    }
    out
}

/// Types `(h_l)` / `(t_k)` of the blocks of `φ(X ⊗_F Y)`, in layout order.
fn block_types(fusion: &FusionRing, x_grades: &[Option<usize>], y_grades: &[Option<usize>]) -> Vec<Obj> {
    let n = fusion.rank();
    let mut out = Vec::with_capacity(x_grades.len() * y_grades.len());
    for gy in y_grades {
        for gx in x_grades {
            out.push(match (gx, gy) {
                (Some(a), Some(b)) => fusion.cvec(*a, *b),
                _ => Obj::zero(n),
            });
        }
    }
    out
}

fn grades_of(t: &Obj, len: usize) -> Vec<Option<usize>> {
    let g = t.grades();
    (0..len).map(|k| g.get(k).copied()).collect()
}

/// `X ⊗̂ Y = Π(φ(X ⊗_F Y))`.
pub fn hat_tensor<S: Field>(
    fusion: &FusionRing,
    alg: &GradedAlgebra<S>,
    phi: &PhiTable<S>,
    x: &BlockMatrix<S>,
    y: &BlockMatrix<S>,
) -> BlockMatrix<S> {
    let row_type = fusion.obj_tensor(x.row_type(), y.row_type());
    let col_type = fusion.obj_tensor(x.col_type(), y.col_type());
    if row_type.is_zero() || col_type.is_zero() || x.is_zero() || y.is_zero() {
        return BlockMatrix::zero(row_type, col_type);
    }
    let h = block_types(fusion, &grades_of(x.row_type(), x.rows()), &grades_of(y.row_type(), y.rows()));
    let t = block_types(fusion, &grades_of(x.col_type(), x.cols()), &grades_of(y.col_type(), y.cols()));
    let rmap = pi_index_map(&h);
    let cmap = pi_index_map(&t);
    let mut grid = Grid::zeros(row_type.size(), col_type.size());
    for rp in 0..y.rows() {
        for cp in 0..y.cols() {
            let ye = y.get(rp, cp);
            if ye.is_zero() {
                continue;
            }
            for r in 0..x.rows() {
                for c in 0..x.cols() {
                    let xe = x.get(r, c);
                    if xe.is_zero() {
                        continue;
                    }
                    let l = rp * x.rows() + r;
                    let k = cp * x.cols() + c;
                    let block = phi.apply(&h[l], &t[k], &tensor_terms(xe, ye));
                    for (u, &gr) in rmap[l].iter().enumerate() {
                        for (v, &gc) in cmap[k].iter().enumerate() {
                            let e = block.get(u, v);
                            if !e.is_zero() {
                                grid.set(gr, gc, e.clone());
                            }
                        }
                    }
                }
            }
        }
    }
    BlockMatrix::from_grid(alg, row_type, col_type, grid).expect("hat tensor preserves grading")
}

/// `P(m₁, m₂)`: the permutation rearranging `φ(X ⊗_F Y)` by grade, for
/// nonzero objects.
pub fn layout_perm<S: Field>(fusion: &FusionRing, m1: &Obj, m2: &Obj) -> DenseMatrix<S> {
    let g1: Vec<Option<usize>> = m1.grades().into_iter().map(Some).collect();
    let g2: Vec<Option<usize>> = m2.grades().into_iter().map(Some).collect();
    perm_matrix(&block_types(fusion, &g1, &g2))
}

/// `X ⊗̂ Y` computed as `P(s₁,s₂) φ(X ⊗_F Y) P(m₁,m₂)ᵀ`; only for nonzero
/// types. Used to cross-check [`hat_tensor`].
pub fn hat_tensor_via_perm<S: Field>(
    fusion: &FusionRing,
    alg: &GradedAlgebra<S>,
    phi: &PhiTable<S>,
    x: &BlockMatrix<S>,
    y: &BlockMatrix<S>,
) -> Result<BlockMatrix<S>> {
    for t in [x.row_type(), x.col_type(), y.row_type(), y.col_type()] {
        if t.is_zero() {
            return Err(Error::TypeMismatch("permutation form needs nonzero types".into()));
        }
    }
    let tg = outer_tensor(x, y);
    let h = block_types(fusion, &grades_of(x.row_type(), x.rows()), &grades_of(y.row_type(), y.rows()));
    let t = block_types(fusion, &grades_of(x.col_type(), x.cols()), &grades_of(y.col_type(), y.cols()));
    // naive block concatenation of φ applied entrywise
    let mut rows_grid: Option<Grid<S>> = None;
    for l in 0..tg.rows {
        let mut row_grid: Option<Grid<S>> = None;
        for k in 0..tg.cols {
            let blk = phi.apply(&h[l], &t[k], &tg.entries[l * tg.cols + k]).into_grid();
            row_grid = Some(match row_grid {
                None => blk,
                Some(g) => g.hconcat(&blk)?,
            });
        }
        let row_grid = row_grid.expect("nonempty row");
        rows_grid = Some(match rows_grid {
            None => row_grid,
            Some(g) => g.vconcat(&row_grid)?,
        });
    }
    let naive = rows_grid.expect("nonempty grid");
    let p_rows = layout_perm::<S>(fusion, x.row_type(), y.row_type());
    let p_cols = layout_perm::<S>(fusion, x.col_type(), y.col_type());
    let grid = naive.scalar_left(&p_rows)?.scalar_right(&p_cols.transpose())?;
    BlockMatrix::from_grid(alg, fusion.obj_tensor(x.row_type(), y.row_type()), fusion.obj_tensor(x.col_type(), y.col_type()), grid)
}
