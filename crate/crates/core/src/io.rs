//! JSON files for quadruples, matrices and witnesses.
//!
//! All indices in files are 0-based. Scalars are string literals; an
//! algebra element is a list of `[coefficient, basis_index]` pairs.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElement, BasisElem, GradedAlgebra};
use crate::associator::AssociatorFamily;
use crate::blockmat::{BlockMatrix, Grid};
use crate::category::Quadruple;
use crate::equivalence::{EquivWitness, EtaWitness};
use crate::error::{Error, Result};
use crate::fusion::{FusionRing, Obj};
use crate::linalg::{Field, FieldKind};
use crate::phimap::PhiTable;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson(pub String, pub usize);

pub type ElemJson = Vec<TermJson>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockJson {
    pub i: usize,
    pub j: usize,
    pub entries: Vec<Vec<ElemJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub row_type: Vec<usize>,
    pub col_type: Vec<usize>,
    #[serde(default)]
    pub blocks: Vec<BlockJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisJson {
    pub name: String,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductJson {
    pub left: usize,
    pub right: usize,
    pub value: ElemJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub basis: Vec<BasisJson>,
    pub idempotents: Vec<usize>,
    pub products: Vec<ProductJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhiJson {
    pub p: usize,
    pub q: usize,
    pub value: MatrixJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AssocJson {
    pub i: usize,
    pub j: usize,
    pub l: usize,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadrupleJson {
    pub field: FieldKind,
    pub rank: usize,
    pub fusion: Vec<Vec<Vec<usize>>>,
    pub algebra: AlgebraJson,
    #[serde(default)]
    pub phi: Vec<PhiJson>,
    #[serde(default)]
    pub associator: Vec<AssocJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairMatrixJson {
    pub i: usize,
    pub j: usize,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EtaJson {
    pub eta: Vec<PairMatrixJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquivJson {
    pub sigma: Vec<usize>,
    pub delta: Vec<ElemJson>,
    pub alpha: String,
    pub phi: Vec<PairMatrixJson>,
}

fn malformed(e: serde_json::Error) -> Error {
    Error::Malformed(e.to_string())
}

/// Field descriptor of a quadruple file, read before choosing a scalar type.
pub fn peek_field(src: &str) -> Result<FieldKind> {
    #[derive(Deserialize)]
    struct Peek {
        field: FieldKind,
    }
    let peek: Peek = serde_json::from_str(src).map_err(malformed)?;
    peek.field.validate()?;
    Ok(peek.field)
}

pub fn elem_to_json<S: Field>(x: &AlgElement<S>, field: &FieldKind) -> ElemJson {
    x.terms().iter().map(|(p, c)| TermJson(c.to_literal(field), *p)).collect()
}

pub fn elem_from_json<S: Field>(x: &ElemJson, field: &FieldKind, dim: usize) -> Result<AlgElement<S>> {
    let mut terms = Vec::with_capacity(x.len());
    for TermJson(c, p) in x {
        if *p >= dim {
            return Err(Error::Malformed(format!("basis index {p} out of range (dimension {dim})")));
        }
        terms.push((*p, S::parse_literal(c, field)?));
    }
    Ok(AlgElement::from_terms(terms))
}

fn obj_from_json(v: &[usize], n: usize) -> Result<Obj> {
    if v.len() != n {
        return Err(Error::Malformed(format!("object {v:?} does not have rank {n}")));
    }
    Ok(Obj(v.to_vec()))
}

pub fn matrix_to_json<S: Field>(x: &BlockMatrix<S>, field: &FieldKind) -> MatrixJson {
    let (m, s) = (x.row_type(), x.col_type());
    let mut blocks = Vec::new();
    for i in 0..m.rank() {
        for j in 0..s.rank() {
            if m.get(i) == 0 || s.get(j) == 0 {
                continue;
            }
            let entries: Vec<Vec<ElemJson>> = (0..m.get(i))
                .map(|u| (0..s.get(j)).map(|v| elem_to_json(x.get(m.offset(i) + u, s.offset(j) + v), field)).collect())
                .collect();
            if entries.iter().flatten().any(|e| !e.is_empty()) {
                blocks.push(BlockJson { i, j, entries });
            }
        }
    }
    MatrixJson { row_type: m.0.clone(), col_type: s.0.clone(), blocks }
}

pub fn matrix_from_json<S: Field>(x: &MatrixJson, alg: &GradedAlgebra<S>, field: &FieldKind) -> Result<BlockMatrix<S>> {
    let n = alg.rank();
    let m = obj_from_json(&x.row_type, n)?;
    let s = obj_from_json(&x.col_type, n)?;
    let mut grid = Grid::zeros(m.size().max(1), s.size().max(1));
    for b in &x.blocks {
        if b.i >= n || b.j >= n {
            return Err(Error::Malformed(format!("block ({},{}) out of range", b.i, b.j)));
        }
        if b.entries.len() != m.get(b.i) || b.entries.iter().any(|row| row.len() != s.get(b.j)) {
            return Err(Error::Malformed(format!("block ({},{}) must be {}x{}", b.i, b.j, m.get(b.i), s.get(b.j))));
        }
        for (u, row) in b.entries.iter().enumerate() {
            for (v, e) in row.iter().enumerate() {
                grid.set(m.offset(b.i) + u, s.offset(b.j) + v, elem_from_json(e, field, alg.dim())?);
            }
        }
    }
    BlockMatrix::from_grid(alg, m, s, grid).map_err(|e| Error::Malformed(e.to_string()))
}

pub fn quadruple_to_json<S: Field>(q: &Quadruple<S>) -> QuadrupleJson {
    let f = &q.field;
    let alg = &q.algebra;
    let d = alg.dim();
    let mut products = Vec::new();
    for p in 0..d {
        for r in 0..d {
            let v = alg.mul_basis(p, r);
            if !v.is_zero() {
                products.push(ProductJson { left: p, right: r, value: elem_to_json(v, f) });
            }
        }
    }
    let n = q.rank();
    let mut associator = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                associator.push(AssocJson { i, j, l, matrix: matrix_to_json(q.assoc.get(i, j, l), f) });
            }
        }
    }
    QuadrupleJson {
        field: *f,
        rank: n,
        fusion: q.fusion.to_nested(),
        algebra: AlgebraJson {
            basis: alg.basis().iter().map(|b| BasisJson { name: b.name.clone(), row: b.row, col: b.col }).collect(),
            idempotents: alg.idempotents().to_vec(),
            products,
        },
        phi: q.phi.entries().map(|((p, r), v)| PhiJson { p, q: r, value: matrix_to_json(v, f) }).collect(),
        associator,
    }
}

/// Parse a quadruple. Structural problems (bad shapes, indices, literals)
/// are errors; type mismatches of `φ` values and associator matrices are
/// left for validation to report.
pub fn quadruple_from_json<S: Field>(j: &QuadrupleJson) -> Result<Quadruple<S>> {
    let field = j.field;
    field.validate()?;
    if !S::supports(&field) {
        return Err(Error::Malformed("scalar type does not match the field descriptor".into()));
    }
    let fusion = FusionRing::new(j.fusion.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
    if fusion.rank() != j.rank {
        return Err(Error::Malformed(format!("fusion tensor has rank {} but rank is {}", fusion.rank(), j.rank)));
    }
    let d = j.algebra.basis.len();
    let basis = j.algebra.basis.iter().map(|b| BasisElem { name: b.name.clone(), row: b.row, col: b.col }).collect();
    let mut products = Vec::with_capacity(j.algebra.products.len());
    for pr in &j.algebra.products {
        if pr.left >= d || pr.right >= d {
            return Err(Error::Malformed(format!("product ({},{}) out of range", pr.left, pr.right)));
        }
        products.push((pr.left, pr.right, elem_from_json(&pr.value, &field, d)?));
    }
    let algebra =
        GradedAlgebra::new(j.rank, basis, j.algebra.idempotents.clone(), products).map_err(|e| Error::Malformed(e.to_string()))?;

    let mut phi = PhiTable::empty(&algebra);
    for entry in &j.phi {
        if entry.p >= d || entry.q >= d {
            return Err(Error::Malformed(format!("phi pair ({},{}) out of range", entry.p, entry.q)));
        }
        phi.set_unchecked(entry.p, entry.q, matrix_from_json(&entry.value, &algebra, &field)?);
    }

    let n = j.rank;
    let mut assoc = AssociatorFamily::identity(&fusion, &algebra);
    let mut seen = vec![false; n * n * n];
    for a in &j.associator {
        if a.i >= n || a.j >= n || a.l >= n {
            return Err(Error::Malformed(format!("associator index ({},{},{}) out of range", a.i, a.j, a.l)));
        }
        seen[(a.i * n + a.j) * n + a.l] = true;
        assoc.set(a.i, a.j, a.l, matrix_from_json(&a.matrix, &algebra, &field)?);
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        return Err(Error::Malformed(format!("associator missing for ({},{},{})", k / (n * n), (k / n) % n, k % n)));
    }
    Ok(Quadruple { field, fusion, algebra, phi, assoc })
}

pub fn parse_quadruple<S: Field>(src: &str) -> Result<Quadruple<S>> {
    let j: QuadrupleJson = serde_json::from_str(src).map_err(malformed)?;
    quadruple_from_json(&j)
}

/// Pretty JSON with fixed key order.
pub fn write_quadruple<S: Field>(q: &Quadruple<S>) -> String {
    serde_json::to_string_pretty(&quadruple_to_json(q)).expect("serializable")
}

pub fn parse_matrix<S: Field>(src: &str, alg: &GradedAlgebra<S>, field: &FieldKind) -> Result<BlockMatrix<S>> {
    let j: MatrixJson = serde_json::from_str(src).map_err(malformed)?;
    matrix_from_json(&j, alg, field)
}

pub fn write_matrix<S: Field>(x: &BlockMatrix<S>, field: &FieldKind) -> String {
    serde_json::to_string(&matrix_to_json(x, field)).expect("serializable")
}

fn pairs_from_json<S: Field>(list: &[PairMatrixJson], n: usize, alg: &GradedAlgebra<S>, field: &FieldKind) -> Result<Vec<BlockMatrix<S>>> {
    let mut out: Vec<Option<BlockMatrix<S>>> = vec![None; n * n];
    for e in list {
        if e.i >= n || e.j >= n {
            return Err(Error::Malformed(format!("pair ({},{}) out of range", e.i, e.j)));
        }
        out[e.i * n + e.j] = Some(matrix_from_json(&e.matrix, alg, field)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(k, m)| m.ok_or_else(|| Error::Malformed(format!("missing matrix for pair ({},{})", k / n, k % n))))
        .collect()
}

pub fn parse_eta<S: Field>(src: &str, q: &Quadruple<S>) -> Result<EtaWitness<S>> {
    let j: EtaJson = serde_json::from_str(src).map_err(malformed)?;
    let n = q.rank();
    let mats = pairs_from_json(&j.eta, n, &q.algebra, &q.field)?;
    let mut it = mats.into_iter();
    Ok(EtaWitness::from_fn(n, |_, _| it.next().expect("n² matrices")))
}

pub fn write_eta<S: Field>(w: &EtaWitness<S>, field: &FieldKind) -> String {
    let n = w.rank();
    let eta = (0..n * n).map(|k| PairMatrixJson { i: k / n, j: k % n, matrix: matrix_to_json(w.get(k / n, k % n), field) }).collect();
    serde_json::to_string_pretty(&EtaJson { eta }).expect("serializable")
}

/// Parse an equivalence witness from `qa` to `qb`; `φ_{i,j}` live over the
/// algebra of `qb`.
pub fn parse_equiv<S: Field>(src: &str, qa: &Quadruple<S>, qb: &Quadruple<S>) -> Result<EquivWitness<S>> {
    let j: EquivJson = serde_json::from_str(src).map_err(malformed)?;
    let field = &qb.field;
    let delta = j.delta.iter().map(|e| elem_from_json(e, field, qb.algebra.dim())).collect::<Result<Vec<_>>>()?;
    if delta.len() != qa.algebra.dim() {
        return Err(Error::Malformed(format!("delta needs {} images", qa.algebra.dim())));
    }
    let n = qa.rank();
    if j.sigma.len() != n {
        return Err(Error::Malformed(format!("sigma needs {n} images")));
    }
    Ok(EquivWitness {
        sigma: j.sigma,
        delta,
        alpha: S::parse_literal(&j.alpha, field)?,
        phi: pairs_from_json(&j.phi, n, &qb.algebra, field)?,
    })
}

pub fn write_equiv<S: Field>(w: &EquivWitness<S>, field: &FieldKind) -> String {
    let n = w.sigma.len();
    let json = EquivJson {
        sigma: w.sigma.clone(),
        delta: w.delta.iter().map(|e| elem_to_json(e, field)).collect(),
        alpha: w.alpha.to_literal(field),
        phi: (0..n * n).map(|k| PairMatrixJson { i: k / n, j: k % n, matrix: matrix_to_json(w.phi(k / n, k % n), field) }).collect(),
    };
    serde_json::to_string_pretty(&json).expect("serializable")
}
