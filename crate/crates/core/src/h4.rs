//! Built-in examples: the category of finite-dimensional modules over
//! Sweedler's four-dimensional Hopf algebra, reconstructed from explicit
//! linear data, and the pointed categories `Vec(ℤ/2)`.
//!
//! Tensor products of vector spaces use the second factor as the outer
//! index: `v_a ⊗ w_b` has coordinate `b·dim V + a`. With this ordering the
//! two bracketings of a triple tensor product share coordinates.

use crate::algebra::{AlgElement, BasisElem, GradedAlgebra};
use crate::associator::{extend, AssociatorFamily};
use crate::blockmat::{col_selector, row_selector, slots, BlockMatrix};
use crate::category::Quadruple;
use crate::equivalence::EtaWitness;
use crate::error::{Error, Result};
use crate::fusion::{FusionRing, Obj};
use crate::linalg::{DenseMatrix, Field, FieldKind};
use crate::phimap::{phi_type, PhiTable};
use crate::report::{Locus, Report};

/// Names of the basis of the path algebra, in index order.
pub const H4_BASIS: [&str; 10] = ["e1", "e2", "e3", "e4", "x21", "x32", "x43", "x14", "x43x32", "x21x14"];

/// `f ⊗ g` on tensor spaces in the second-factor-outer ordering.
fn tensor_map<S: Field>(f: &DenseMatrix<S>, g: &DenseMatrix<S>) -> DenseMatrix<S> {
    g.kron(f)
}

/// Indecomposables as vector spaces, basis morphisms as matrices, and the
/// decomposition isomorphisms `θ_ij: V_i ⊗ V_j → V(c_ij)`.
#[derive(Clone, Debug)]
pub struct ConcreteModel<S> {
    pub dims: Vec<usize>,
    /// Matrix of each algebra basis element, `V_col → V_row`.
    pub basis_maps: Vec<DenseMatrix<S>>,
    /// `θ_ij`, row-major over `(i, j)`.
    pub theta: Vec<DenseMatrix<S>>,
    pub fusion: FusionRing,
    pub algebra: GradedAlgebra<S>,
}

/// Fusion ring of the Green ring: `r₃² = r₁`, `r₂² = r₄² = r₂r₄ = r₂ + r₄`,
/// `r₂r₃ = r₄`, `r₃r₄ = r₂`.
pub fn h4_fusion() -> FusionRing {
    FusionRing::from_products(4, |i, j| {
        let (a, b) = (i.min(j), i.max(j));
        match (a, b) {
            (0, k) => unit_vec(k),
            (2, 2) => unit_vec(0),
            (1, 1) | (3, 3) | (1, 3) => vec![0, 1, 0, 1],
            (1, 2) => unit_vec(3),
            (2, 3) => unit_vec(1),
            _ => unreachable!(),
        }
    })
}

fn unit_vec(k: usize) -> Vec<usize> {
    let mut v = vec![0; 4];
    v[k] = 1;
    v
}

/// The path algebra of the oriented 4-cycle `1 → 2 → 3 → 4 → 1` modulo
/// `x32·x21 = 0` and `x14·x43 = 0`.
pub fn h4_algebra<S: Field>(field: &FieldKind) -> GradedAlgebra<S> {
    // (name, row, col) with 0-based grades; x_ij ∈ e_i A e_j
    let grades = [(0, 0), (1, 1), (2, 2), (3, 3), (1, 0), (2, 1), (3, 2), (0, 3), (3, 1), (1, 3)];
    let basis: Vec<BasisElem> =
        H4_BASIS.iter().zip(grades).map(|(name, (row, col))| BasisElem { name: name.to_string(), row, col }).collect();
    let one = S::from_int(1, field);
    let mut products = Vec::new();
    for (p, b) in basis.iter().enumerate() {
        products.push((b.row, p, AlgElement::from_terms(vec![(p, one.clone())])));
        if b.row != b.col || p >= 4 {
            products.push((p, b.col, AlgElement::from_terms(vec![(p, one.clone())])));
        }
    }
    products.push((6, 5, AlgElement::from_terms(vec![(8, one.clone())])));
    products.push((4, 7, AlgElement::from_terms(vec![(9, one)])));
    GradedAlgebra::new(4, basis, vec![0, 1, 2, 3], products).expect("the path algebra is well formed")
}

impl<S: Field> ConcreteModel<S> {
    /// The standard model with `θ_ij` scaled by `scales[i][j]`.
    pub fn h4_scaled(field: &FieldKind, scales: &[Vec<S>]) -> Result<Self> {
        let int = |v: i64| S::from_int(v, field);
        let mat = |rows: &[&[i64]]| {
            DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).expect("rectangular literal")
        };
        let dims = vec![1, 2, 1, 2];
        // x32 and x14 act with a minus sign, which gives φ(e2⊗x32) = (0, -e4)
        // and leaves φ on pairs of arrows unchanged; see `unsigned_arrow_maps`
        let basis_maps = vec![
            DenseMatrix::identity(1),
            DenseMatrix::identity(2),
            DenseMatrix::identity(1),
            DenseMatrix::identity(2),
            mat(&[&[0], &[1]]),        // x21: v1 ↦ v22
            mat(&[&[-1, 0]]),          // x32: v21 ↦ -v3, v22 ↦ 0
            mat(&[&[0], &[1]]),        // x43: v3 ↦ v42
            mat(&[&[-1, 0]]),          // x14: v41 ↦ -v1, v42 ↦ 0
            mat(&[&[0, 0], &[-1, 0]]), // x43x32
            mat(&[&[0, 0], &[-1, 0]]), // x21x14
        ];
        // columns of θ_ij are indexed by v_a ⊗ w_b ↦ b·dim V_i + a; rows
        // by the basis of V(c_ij) in grade order.
        let mut theta = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                let t = match (i, j) {
                    (0, _) => DenseMatrix::identity(dims[j]),
                    (_, 0) => DenseMatrix::identity(dims[i]),
                    // v3⊗v21 ↦ v41, v3⊗v22 ↦ v42
                    (2, 1) => mat(&[&[1, 0], &[0, 1]]),
                    // v3⊗v41 ↦ v21, v3⊗v42 ↦ v22
                    (2, 3) => mat(&[&[1, 0], &[0, 1]]),
                    // v21⊗v3 ↦ v41, v22⊗v3 ↦ −v42
                    (1, 2) => mat(&[&[1, 0], &[0, -1]]),
                    // v41⊗v3 ↦ v21, v42⊗v3 ↦ −v22
                    (3, 2) => mat(&[&[1, 0], &[0, -1]]),
                    (2, 2) => mat(&[&[1]]),
                    // columns: v21⊗v21, v22⊗v21, v21⊗v22, v22⊗v22
                    // rows: v21, v22, v41, v42
                    (1, 1) => mat(&[&[0, 1, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, -1, 0, 0]]),
                    // columns: v21⊗v41, v22⊗v41, v21⊗v42, v22⊗v42
                    (1, 3) => mat(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, -1, 0], &[0, 0, 0, 1]]),
                    // columns: v41⊗v21, v42⊗v21, v41⊗v22, v42⊗v22
                    (3, 1) => mat(&[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 1, 1, 0], &[0, 0, 0, 1]]),
                    // columns: v41⊗v41, v42⊗v41, v41⊗v42, v42⊗v42
                    (3, 3) => mat(&[&[0, 1, -1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 0, 1, 0]]),
                    _ => unreachable!(),
                };
                let s = &scales[i][j];
                if s.is_zero() {
                    return Err(Error::OutOfRange(format!("zero scale at ({},{})", i + 1, j + 1)));
                }
                theta.push(t.scale(s));
            }
        }
        Ok(ConcreteModel { dims, basis_maps, theta, fusion: h4_fusion(), algebra: h4_algebra(field) })
    }

    pub fn h4(field: &FieldKind) -> Self {
        let ones = vec![vec![S::from_int(1, field); 4]; 4];
        Self::h4_scaled(field, &ones).expect("unit scales")
    }

    /// Same model with `x32(v21) = v3` and `x14(v41) = v1`. The algebra
    /// automorphism negating `x32` and `x14` carries one quadruple to the
    /// other.
    pub fn unsigned_arrow_maps(mut self, field: &FieldKind) -> Self {
        let minus = S::from_int(-1, field);
        for p in [5, 7, 8, 9] {
            self.basis_maps[p] = self.basis_maps[p].scale(&minus);
        }
        self
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn theta(&self, i: usize, j: usize) -> &DenseMatrix<S> {
        &self.theta[i * self.rank() + j]
    }

    /// Dimension of `V(m) = ⊕ V_{g(r)}`.
    pub fn space_dim(&self, m: &Obj) -> usize {
        m.grades().iter().map(|&g| self.dims[g]).sum()
    }

    /// Linear map `V(col type) → V(row type)` of a typed matrix.
    pub fn realize(&self, x: &BlockMatrix<S>) -> DenseMatrix<S> {
        let rg = x.row_type().grades();
        let cg = x.col_type().grades();
        let roff = offsets(&rg, &self.dims);
        let coff = offsets(&cg, &self.dims);
        let mut out: DenseMatrix<S> = DenseMatrix::zeros(self.space_dim(x.row_type()), self.space_dim(x.col_type()));
        for (r, &gr) in rg.iter().enumerate() {
            for (c, &gc) in cg.iter().enumerate() {
                for (p, coeff) in x.get(r, c).terms() {
                    let m = &self.basis_maps[*p];
                    for a in 0..self.dims[gr] {
                        for b in 0..self.dims[gc] {
                            let v = out.get(roff[r] + a, coff[c] + b).clone() + coeff.clone() * m.get(a, b).clone();
                            out.set(roff[r] + a, coff[c] + b, v);
                        }
                    }
                }
            }
        }
        out
    }

    /// Inverse of [`realize`](Self::realize): read off each block from its
    /// first basis vector, then verify the whole block.
    pub fn derealize(&self, m: &DenseMatrix<S>, row_type: &Obj, col_type: &Obj, locus: &str) -> Result<BlockMatrix<S>> {
        let rg = row_type.grades();
        let cg = col_type.grades();
        let roff = offsets(&rg, &self.dims);
        let coff = offsets(&cg, &self.dims);
        let mut x = BlockMatrix::zero(row_type.clone(), col_type.clone());
        let mut rows = x.to_rows();
        for (r, &gr) in rg.iter().enumerate() {
            for (c, &gc) in cg.iter().enumerate() {
                let block = |a: usize, b: usize| m.get(roff[r] + a, coff[c] + b).clone();
                let candidates = self.algebra.peirce_basis(gr, gc);
                let mut entry = AlgElement::zero();
                if let Some(&p) = candidates.first() {
                    let bm = &self.basis_maps[p];
                    if let Some(a) = (0..self.dims[gr]).find(|&a| !bm.get(a, 0).is_zero()) {
                        let coeff = block(a, 0) / bm.get(a, 0).clone();
                        entry = AlgElement::basis(p).scale(&coeff);
                    }
                }
                for a in 0..self.dims[gr] {
                    for b in 0..self.dims[gc] {
                        let expect =
                            entry.terms().iter().fold(S::zero(), |acc, (p, k)| acc + k.clone() * self.basis_maps[*p].get(a, b).clone());
                        if expect != block(a, b) {
                            return Err(Error::Inconsistent {
                                locus: format!("{locus} block ({},{})", r + 1, c + 1),
                                detail: "linear map is not a multiple of the basis morphism".into(),
                            });
                        }
                    }
                }
                rows[r][c] = entry;
            }
        }
        x = BlockMatrix::from_rows(&self.algebra, row_type.clone(), col_type.clone(), rows)?;
        Ok(x)
    }

    /// `φ(p ⊗ q) = θ (p ⊗ q) θ⁻¹`.
    pub fn phi_value(&self, p: usize, q: usize) -> Result<BlockMatrix<S>> {
        let (pr, pc) = self.algebra.grade(p);
        let (qr, qc) = self.algebra.grade(q);
        let lin = self.theta(pr, qr).mul(&tensor_map(&self.basis_maps[p], &self.basis_maps[q]))?.mul(&self.theta(pc, qc).inverse()?)?;
        let (rt, ct) = phi_type(&self.fusion, &self.algebra, p, q);
        self.derealize(&lin, &rt, &ct, &format!("phi({}⊗{})", self.algebra.name(p), self.algebra.name(q)))
    }

    pub fn phi_table(&self) -> Result<PhiTable<S>> {
        let d = self.algebra.dim();
        let mut values = Vec::new();
        for p in 0..d {
            for q in 0..d {
                values.push(((p, q), self.phi_value(p, q)?));
            }
        }
        PhiTable::from_values(&self.fusion, &self.algebra, values)
    }

    /// `θ(m₁, m₂): V(m₁) ⊗ V(m₂) → V(m₁ ⊗̂ m₂)`, given the tensor product of
    /// matrices built from this model's `φ`.
    pub fn theta_ext(&self, q: &Quadruple<S>, m1: &Obj, m2: &Obj) -> DenseMatrix<S> {
        let alg = &self.algebra;
        let mut acc = DenseMatrix::zeros(self.space_dim(&q.obj_tensor(m1, m2)), self.space_dim(m1) * self.space_dim(m2));
        for (i, k1) in slots(m1) {
            let x1 = col_selector(alg, m1, i, k1).expect("slot");
            let y1 = row_selector(alg, m1, i, k1).expect("slot");
            for (j, k2) in slots(m2) {
                let x2 = col_selector(alg, m2, j, k2).expect("slot");
                let y2 = row_selector(alg, m2, j, k2).expect("slot");
                let term = self
                    .realize(&q.hat(&x1, &x2))
                    .mul(self.theta(i, j))
                    .and_then(|z| z.mul(&tensor_map(&self.realize(&y1), &self.realize(&y2))))
                    .expect("dimensions agree");
                acc = acc.add(&term).expect("dimensions agree");
            }
        }
        acc
    }

    /// `a_{i,j,l} = θ(e_i, c_jl)(E ⊗ θ_jl)(θ_ij⁻¹ ⊗ E)θ(c_ij, e_l)⁻¹`.
    pub fn associator(&self, q: &Quadruple<S>, i: usize, j: usize, l: usize) -> Result<BlockMatrix<S>> {
        let n = self.rank();
        let e = |k: usize| Obj::unit(n, k);
        let id = |k: usize| DenseMatrix::identity(self.dims[k]);
        let lin = self
            .theta_ext(q, &e(i), &self.fusion.cvec(j, l))
            .mul(&tensor_map(&id(i), self.theta(j, l)))?
            .mul(&tensor_map(&self.theta(i, j).inverse()?, &id(l)))?
            .mul(&self.theta_ext(q, &self.fusion.cvec(i, j), &e(l)).inverse()?)?;
        let t = crate::associator::triple_type(&self.fusion, i, j, l);
        self.derealize(&lin, &t, &t, &format!("a({},{},{})", i + 1, j + 1, l + 1))
    }

    /// The full quadruple derived from the model.
    pub fn quadruple(&self, field: &FieldKind) -> Result<Quadruple<S>> {
        let mut q = Quadruple {
            field: *field,
            fusion: self.fusion.clone(),
            algebra: self.algebra.clone(),
            phi: self.phi_table()?,
            assoc: AssociatorFamily::identity(&self.fusion, &self.algebra),
        };
        let n = self.rank();
        let mut assoc = q.assoc.clone();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    assoc.set(i, j, l, self.associator(&q, i, j, l)?);
                }
            }
        }
        q.assoc = assoc;
        Ok(q)
    }

    /// The commuting squares relating `φ`, `θ` and the associator: for all
    /// basis pairs `φ(x⊗y) θ_{ij} = θ_{i'j'} (x⊗y)`, and for each listed
    /// triple `a θ(m⊗̂s, t)(θ(m,s) ⊗ E) = θ(m, s⊗̂t)(E ⊗ θ(s,t))`.
    pub fn check_diagrams(&self, q: &Quadruple<S>, triples: &[(Obj, Obj, Obj)]) -> Report {
        let mut report = Report::new();
        let alg = &self.algebra;
        let d = alg.dim();
        for p in 0..d {
            for r in 0..d {
                let (pr, pc) = alg.grade(p);
                let (rr, rc) = alg.grade(r);
                let lhs = self.realize(&q.phi.get(&q.fusion, alg, p, r)).mul(self.theta(pc, rc));
                let rhs = self.theta(pr, rr).mul(&tensor_map(&self.basis_maps[p], &self.basis_maps[r]));
                if !matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b) {
                    report.fail("diagram.phi", Locus::new("x,y", [p, r]), "phi(x⊗y)θ differs from θ(x⊗y)".into());
                }
            }
        }
        report.pass_count("diagram.phi", d * d);
        for (k, (m, s, t)) in triples.iter().enumerate() {
            let ok = (|| -> Result<bool> {
                let id = |o: &Obj| DenseMatrix::<S>::identity(self.space_dim(o));
                let lhs = self
                    .realize(&extend(q, m, s, t))
                    .mul(&self.theta_ext(q, &q.obj_tensor(m, s), t))?
                    .mul(&tensor_map(&self.theta_ext(q, m, s), &id(t)))?;
                let rhs = self.theta_ext(q, m, &q.obj_tensor(s, t)).mul(&tensor_map(&id(m), &self.theta_ext(q, s, t)))?;
                Ok(lhs == rhs)
            })();
            if !matches!(ok, Ok(true)) {
                report.fail("diagram.assoc", Locus::new("triple", [k]), format!("({m}),({s}),({t})"));
            }
        }
        report.pass_count("diagram.assoc", triples.len());
        report
    }
}

fn offsets(grades: &[usize], dims: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    grades
        .iter()
        .map(|&g| {
            let o = acc;
            acc += dims[g];
            o
        })
        .collect()
}

/// The H4 quadruple.
pub fn build_h4<S: Field>(field: &FieldKind) -> Result<Quadruple<S>> {
    ConcreteModel::h4(field).quadruple(field)
}

/// The H4 quadruple rebuilt from `θ'_ij = scales[i][j]·θ_ij`, and the gauge
/// witness `η(i,j) = scales[i][j]⁻¹ E` that relates it, as source, to
/// [`build_h4`] as target.
pub fn build_h4_regauged<S: Field>(field: &FieldKind, scales: &[Vec<S>]) -> Result<(Quadruple<S>, EtaWitness<S>)> {
    let one = S::from_int(1, field);
    for k in 0..4 {
        if scales[0][k] != one || scales[k][0] != one {
            return Err(Error::OutOfRange("scales involving the unit object must be 1".into()));
        }
    }
    let model = ConcreteModel::h4_scaled(field, scales)?;
    let q = model.quadruple(field)?;
    let w = EtaWitness::from_fn(4, |i, j| {
        let inv = scales[i][j].try_inverse().expect("nonzero scale");
        q.identity(&q.fusion.cvec(i, j)).scale(&inv)
    });
    Ok((q, w))
}

/// Pointed category `Vec(ℤ/2)`: `A = 𝔽²`, `c_22 = e_1`, trivial `φ`, and
/// `a_{2,2,2} = -e_2` when `sign_cocycle` is set.
pub fn build_vec_z2<S: Field>(field: &FieldKind, sign_cocycle: bool) -> Quadruple<S> {
    let fusion = FusionRing::from_products(2, |i, j| if (i + j) % 2 == 0 { vec![1, 0] } else { vec![0, 1] });
    let mut q = build_diagonal(field, fusion);
    if sign_cocycle {
        let minus = q.assoc.get(1, 1, 1).neg();
        q.assoc.set(1, 1, 1, minus);
    }
    q
}

/// `Vec(ℤ/2)` with `a_{2,2,1} = -e_1`, which breaks the pentagon.
pub fn build_vec_z2_broken<S: Field>(field: &FieldKind) -> Quadruple<S> {
    let mut q = build_vec_z2(field, false);
    let minus = q.assoc.get(1, 1, 0).neg();
    q.assoc.set(1, 1, 0, minus);
    q
}

/// Semisimple quadruple over the diagonal algebra `𝔽ⁿ`: `φ(e_i ⊗ e_j) = E`
/// and the strict associator.
pub fn build_diagonal<S: Field>(field: &FieldKind, fusion: FusionRing) -> Quadruple<S> {
    let n = fusion.rank();
    let basis = (0..n).map(|i| BasisElem { name: format!("e{}", i + 1), row: i, col: i }).collect();
    let one = S::from_int(1, field);
    let products = (0..n).map(|i| (i, i, AlgElement::from_terms(vec![(i, one.clone())]))).collect();
    let algebra = GradedAlgebra::new(n, basis, (0..n).collect(), products).expect("diagonal algebra");
    let phi = PhiTable::from_values(
        &fusion,
        &algebra,
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| ((i, j), BlockMatrix::identity(&algebra, &fusion.cvec(i, j)))),
    )
    .expect("identity blocks have the graded type");
    let assoc = AssociatorFamily::identity(&fusion, &algebra);
    Quadruple { field: *field, fusion, algebra, phi, assoc }
}
