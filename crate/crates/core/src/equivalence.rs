//! Witness checks for equivalence of associators and of whole categories.

use rayon::prelude::*;

use crate::algebra::{AlgElement, GradedAlgebra};
use crate::blockmat::{col_selector, inverse, row_selector, slots, BlockMatrix, Grid};
use crate::category::Quadruple;
use crate::error::{Error, Result};
use crate::fusion::Obj;
use crate::linalg::{DenseMatrix, Field};
use crate::report::{Locus, Report};

/// Gauge matrices `η(i, j)` on `c_ij`, one per ordered pair.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaWitness<S> {
    n: usize,
    eta: Vec<BlockMatrix<S>>,
}

impl<S: Field> EtaWitness<S> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BlockMatrix<S>) -> Self {
        let eta = (0..n * n).map(|k| f(k / n, k % n)).collect();
        EtaWitness { n, eta }
    }

    /// All `η(i, j) = E`.
    pub fn identity(q: &Quadruple<S>) -> Self {
        Self::from_fn(q.rank(), |i, j| q.identity(&q.fusion.cvec(i, j)))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BlockMatrix<S> {
        &self.eta[i * self.n + j]
    }

    /// Pairwise product `η₁(i,j) η₂(i,j)`.
    pub fn then(&self, alg: &GradedAlgebra<S>, other: &Self) -> Result<Self> {
        let mut eta = Vec::with_capacity(self.eta.len());
        for (a, b) in self.eta.iter().zip(&other.eta) {
            eta.push(a.compose(alg, b)?);
        }
        Ok(EtaWitness { n: self.n, eta })
    }
}

/// `η(m, s) = Σ (X^m ⊗̂ X^s) η(i,j) (Y^m ⊗̂' Y^s)`; the left factor uses
/// the tensor product of `target`, the right that of `source`.
pub fn extend_eta<S: Field>(target: &Quadruple<S>, source: &Quadruple<S>, w: &EtaWitness<S>, m: &Obj, s: &Obj) -> BlockMatrix<S> {
    let total = target.obj_tensor(m, s);
    let mut acc = BlockMatrix::zero(total.clone(), total.clone());
    if total.is_zero() {
        return acc;
    }
    let alg = &target.algebra;
    for (i, k) in slots(m) {
        let xm = col_selector(alg, m, i, k).expect("slot");
        let ym = row_selector(alg, m, i, k).expect("slot");
        for (j, kp) in slots(s) {
            let xs = col_selector(alg, s, j, kp).expect("slot");
            let ys = row_selector(alg, s, j, kp).expect("slot");
            let term = target
                .hat(&xm, &xs)
                .compose(alg, w.get(i, j))
                .and_then(|z| z.compose(alg, &source.hat(&ym, &ys)))
                .expect("well-typed gauge term");
            acc = acc.add(&term).expect("same type");
        }
    }
    acc
}

/// Check that `w` makes the identity functor, with `η(m, s)` from the
/// tensor product of `source` to that of `target`, a tensor equivalence:
/// `(x ⊗̂ y) η(i,j) = η(i',j') (x ⊗̂' y)` on basis pairs and
/// `a η(c_ij, e_l)(η(i,j) ⊗̂' E) = η(e_i, c_jl)(E ⊗̂' η(j,l)) a'` on triples.
/// Both quadruples must share the fusion ring and the algebra.
pub fn check_eta_equiv<S: Field>(target: &Quadruple<S>, source: &Quadruple<S>, w: &EtaWitness<S>) -> Report {
    let mut report = Report::new();
    if target.fusion != source.fusion || target.algebra != source.algebra || w.rank() != target.rank() {
        report.fail("eta.compatible", Locus::from_vec("quadruples", vec![]), "fusion ring, algebra or witness rank differ".into());
        return report;
    }
    report.pass_count("eta.compatible", 1);
    let n = target.rank();
    let alg = &target.algebra;
    for i in 0..n {
        for j in 0..n {
            let want = target.fusion.cvec(i, j);
            let e = w.get(i, j);
            if e.row_type() != &want || e.col_type() != &want {
                report.fail("eta.type", Locus::new("i,j", [i, j]), format!("expected a square matrix on ({want})"));
            } else if let Err(err) = inverse(alg, e) {
                report.fail("eta.invertible", Locus::new("i,j", [i, j]), err.to_string());
            }
        }
    }
    report.pass_count("eta.type", n * n);
    report.pass_count("eta.invertible", n * n);
    if !report.is_ok() {
        return report;
    }

    let d = alg.dim();
    let bad: Vec<[usize; 2]> = (0..d * d)
        .into_par_iter()
        .filter_map(|k| {
            let (x, y) = (k / d, k % d);
            let (xr, xc) = alg.grade(x);
            let (yr, yc) = alg.grade(y);
            let bx = BlockMatrix::basis_element(alg, x);
            let by = BlockMatrix::basis_element(alg, y);
            let lhs = target.hat(&bx, &by).compose(alg, w.get(xc, yc));
            let rhs = w.get(xr, yr).compose(alg, &source.hat(&bx, &by));
            (!matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)).then_some([x, y])
        })
        .collect();
    for idx in bad {
        report.fail("eta.naturality", Locus::new("x,y", idx), "(x⊗y)η differs from η(x⊗'y)".into());
    }
    report.pass_count("eta.naturality", d * d);

    let e = |k: usize| Obj::unit(n, k);
    let triples: Vec<[usize; 3]> = (0..n * n * n).map(|k| [k / (n * n), (k / n) % n, k % n]).collect();
    let bad: Vec<[usize; 3]> = triples
        .par_iter()
        .filter(|&&[i, j, l]| {
            let lhs = target
                .assoc
                .get(i, j, l)
                .compose(alg, &extend_eta(target, source, w, &target.fusion.cvec(i, j), &e(l)))
                .and_then(|z| z.compose(alg, &source.hat(w.get(i, j), &source.identity(&e(l)))));
            let rhs = extend_eta(target, source, w, &e(i), &target.fusion.cvec(j, l))
                .compose(alg, &source.hat(&source.identity(&e(i)), w.get(j, l)))
                .and_then(|z| z.compose(alg, source.assoc.get(i, j, l)));
            !matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
        })
        .copied()
        .collect();
    for idx in bad {
        report.fail("eta.coherence", Locus::new("i,j,l", idx), "gauge coherence fails".into());
    }
    report.pass_count("eta.coherence", triples.len());
    report
}

/// [`check_eta_equiv`] for two associators over the same `(R, A, φ)`.
pub fn check_eta_equiv_same_phi<S: Field>(q: &Quadruple<S>, other: &crate::associator::AssociatorFamily<S>, w: &EtaWitness<S>) -> Report {
    let source = Quadruple { assoc: other.clone(), ..q.clone() };
    check_eta_equiv(q, &source, w)
}

/// Data of a candidate tensor equivalence between two quadruples.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivWitness<S> {
    /// `σ` as 0-based images; `σ(0) = 0`.
    pub sigma: Vec<usize>,
    /// Images in `A'` of the basis of `A`.
    pub delta: Vec<AlgElement<S>>,
    pub alpha: S,
    /// `φ_{i,j}` on `c'_{σ(i)σ(j)}`, row-major over `(i, j)`.
    pub phi: Vec<BlockMatrix<S>>,
}

impl<S: Field> EquivWitness<S> {
    /// `σ = id`, `δ = id`, `α = 1`, `φ_{i,j} = E`.
    pub fn identity(q: &Quadruple<S>) -> Self {
        let n = q.rank();
        EquivWitness {
            sigma: (0..n).collect(),
            delta: (0..q.algebra.dim()).map(AlgElement::basis).collect(),
            alpha: S::one(),
            phi: (0..n * n).map(|k| q.identity(&q.fusion.cvec(k / n, k % n))).collect(),
        }
    }

    pub fn phi(&self, i: usize, j: usize) -> &BlockMatrix<S> {
        &self.phi[i * self.sigma.len() + j]
    }

    pub fn delta(&self, x: &AlgElement<S>) -> AlgElement<S> {
        x.map_linear(&self.delta)
    }

    /// Entrywise `δ`.
    pub fn delta_grid(&self, x: &Grid<S>) -> Grid<S> {
        x.map_entries(|e| self.delta(e))
    }
}

/// `m^σ`: the multiplicity of `σ(i)` is `m_i`.
pub fn permute_obj(sigma: &[usize], m: &Obj) -> Obj {
    m.permute(sigma)
}

/// `P_σ(m)`: reorders grade blocks of `m` into those of `m^σ`; the 1×1
/// zero matrix for `m = 0`.
pub fn sigma_perm<S: Field>(sigma: &[usize], m: &Obj) -> DenseMatrix<S> {
    if m.is_zero() {
        return DenseMatrix::zeros(1, 1);
    }
    let target = permute_obj(sigma, m);
    let mut p = DenseMatrix::zeros(m.size(), m.size());
    for j in 0..m.rank() {
        for w in 0..m.get(j) {
            p.set(target.offset(sigma[j]) + w, m.offset(j) + w, S::one());
        }
    }
    p
}

/// Inverse permutation.
pub fn invert_sigma(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

/// `F(X) = P_σ(m) δ(X) P_σ(s)ᵀ` for `X` of type `(m, s)`.
pub fn apply_functor<S: Field>(target: &GradedAlgebra<S>, w: &EquivWitness<S>, x: &BlockMatrix<S>) -> Result<BlockMatrix<S>> {
    let m = x.row_type();
    let s = x.col_type();
    let grid = w.delta_grid(x.grid()).scalar_left(&sigma_perm(&w.sigma, m))?.scalar_right(&sigma_perm::<S>(&w.sigma, s).transpose())?;
    BlockMatrix::from_grid(target, permute_obj(&w.sigma, m), permute_obj(&w.sigma, s), grid)
}

fn is_permutation(sigma: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    sigma.len() == n && sigma.iter().all(|&s| s < n && !std::mem::replace(&mut seen[s], true))
}

/// Check the conditions for a tensor equivalence `Ĉ(qa) → Ĉ(qb)` given by
/// `w`: the ring isomorphism, the algebra isomorphism `δ`, and the
/// conditions on `φ_{i,j}`.
pub fn check_tensor_equiv<S: Field>(qa: &Quadruple<S>, qb: &Quadruple<S>, w: &EquivWitness<S>) -> Report {
    let mut report = Report::new();
    let n = qa.rank();
    let none = || Locus::from_vec("", vec![]);
    if qb.rank() != n {
        report.fail("equiv.rank", none(), format!("ranks {n} and {}", qb.rank()));
        return report;
    }
    if !is_permutation(&w.sigma, n) || w.sigma[0] != 0 {
        report.fail("equiv.rank", none(), "sigma is not a permutation fixing the unit".into());
        return report;
    }
    report.pass_count("equiv.rank", 1);
    let sigma = &w.sigma;

    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if qa.fusion.c(i, j, k) != qb.fusion.c(sigma[i], sigma[j], sigma[k]) {
                    report.fail("equiv.ring", Locus::new("i,j,k", [i, j, k]), "structure constants differ".into());
                }
            }
        }
    }
    report.pass_count("equiv.ring", n * n * n);

    let (a, b) = (&qa.algebra, &qb.algebra);
    let d = a.dim();
    if w.delta.len() != d || b.dim() != d {
        report.fail("equiv.delta", none(), format!("delta has {} images for dimensions {d} and {}", w.delta.len(), b.dim()));
        return report;
    }
    for i in 0..n {
        if w.delta[a.idempotent(i)] != AlgElement::basis(b.idempotent(sigma[i])) {
            report.fail("equiv.delta", Locus::new("i", [i]), "delta(e_i) is not e'_sigma(i)".into());
        }
    }
    for p in 0..d {
        for q in 0..d {
            let lhs = w.delta(a.mul_basis(p, q));
            let rhs = b.mul(&w.delta[p], &w.delta[q]);
            if lhs != rhs {
                report.fail("equiv.delta", Locus::new("p,q", [p, q]), "delta is not multiplicative".into());
            }
        }
    }
    let images: Vec<Vec<S>> = w.delta.iter().map(|x| (0..d).map(|p| x.coeff(p)).collect()).collect();
    if DenseMatrix::from_columns(d, &images).rank() != d {
        report.fail("equiv.delta", none(), "delta is not bijective".into());
    }
    report.pass_count("equiv.delta", n + d * d + 1);
    if !report.is_ok() {
        return report;
    }

    if w.alpha.is_zero() || w.phi.len() != n * n {
        report.fail("equiv.phi-type", none(), "alpha must be nonzero and phi must have n² entries".into());
        return report;
    }
    for i in 0..n {
        for j in 0..n {
            let want = qb.fusion.cvec(sigma[i], sigma[j]);
            let f = w.phi(i, j);
            if f.row_type() != &want || f.col_type() != &want {
                report.fail("equiv.phi-type", Locus::new("i,j", [i, j]), format!("expected a square matrix on ({want})"));
            } else if inverse(b, f).is_err() {
                report.fail("equiv.phi-type", Locus::new("i,j", [i, j]), "phi_{i,j} is not invertible".into());
            }
        }
    }
    report.pass_count("equiv.phi-type", n * n);
    if !report.is_ok() {
        return report;
    }

    for i in 0..n {
        let want = BlockMatrix::identity(b, &Obj::unit(n, sigma[i])).scale(&w.alpha);
        if w.phi(0, i) != &want || w.phi(i, 0) != &want {
            report.fail("equiv.unit", Locus::new("i", [i]), "phi_{1,i} or phi_{i,1} is not alpha E".into());
        }
    }
    report.pass_count("equiv.unit", n);

    let inv_alpha = S::one() / w.alpha.clone();
    let phi: Vec<BlockMatrix<S>> = w.phi.iter().map(|f| f.scale(&inv_alpha)).collect();
    let phi_at = |i: usize, j: usize| &phi[i * n + j];

    // φ_{i',j'} (δx ⊗̂' δy) = P_σ(c_{i'j'}) δ(x ⊗̂ y) P_σ(c_ij)ᵀ φ_{i,j}
    let bad: Vec<[usize; 2]> = (0..d * d)
        .into_par_iter()
        .filter_map(|k| {
            let (x, y) = (k / d, k % d);
            let (xr, xc) = a.grade(x);
            let (yr, yc) = a.grade(y);
            let dx = BlockMatrix::element(b, sigma[xr], sigma[xc], w.delta[x].clone());
            let dy = BlockMatrix::element(b, sigma[yr], sigma[yc], w.delta[y].clone());
            let ok = (|| -> Result<bool> {
                let lhs = phi_at(xr, yr).compose(b, &qb.hat(&dx?, &dy?))?;
                let xy = qa.hat(&BlockMatrix::basis_element(a, x), &BlockMatrix::basis_element(a, y));
                let rhs = w
                    .delta_grid(xy.grid())
                    .scalar_left(&sigma_perm(sigma, xy.row_type()))?
                    .scalar_right(&sigma_perm::<S>(sigma, xy.col_type()).transpose())?
                    .mul(b, phi_at(xc, yc).grid())?;
                Ok(lhs.grid() == &rhs)
            })();
            (!matches!(ok, Ok(true))).then_some([x, y])
        })
        .collect();
    for idx in bad {
        report.fail("equiv.phi-natural", Locus::new("x,y", idx), "phi_{i',j'}(δx⊗δy) differs from P δ(x⊗y) Pᵀ phi_{i,j}".into());
    }
    report.pass_count("equiv.phi-natural", d * d);

    let triples: Vec<[usize; 3]> = (0..n * n * n).map(|k| [k / (n * n), (k / n) % n, k % n]).collect();
    let bad: Vec<[usize; 3]> =
        triples.par_iter().filter(|&&[i, j, l]| !matches!(coherence_holds(qa, qb, w, &phi, i, j, l), Ok(true))).copied().collect();
    for idx in bad {
        report.fail("equiv.coherence", Locus::new("i,j,l", idx), "associator compatibility fails".into());
    }
    report.pass_count("equiv.coherence", triples.len());
    report
}

/// Both sides of the associator compatibility for `(i, j, l)`, as plain
/// matrices over `A'`.
fn coherence_holds<S: Field>(
    qa: &Quadruple<S>,
    qb: &Quadruple<S>,
    w: &EquivWitness<S>,
    phi: &[BlockMatrix<S>],
    i: usize,
    j: usize,
    l: usize,
) -> Result<bool> {
    let n = qa.rank();
    let sigma = &w.sigma;
    let (a, b) = (&qa.algebra, &qb.algebra);
    let phi_at = |x: usize, y: usize| &phi[x * n + y];
    let unit_a = |k: usize| qa.identity(&Obj::unit(n, k));
    let unit_b = |k: usize| qb.identity(&Obj::unit(n, sigma[k]));
    let pt = |m: &Obj| sigma_perm::<S>(sigma, m).transpose();

    let cij = qa.fusion.cvec(i, j);
    let cij_b = qb.fusion.cvec(sigma[i], sigma[j]);
    let d_assoc = w.delta_grid(qa.assoc.get(i, j, l).grid());
    let mut lhs: Option<Grid<S>> = None;
    for (t, k) in slots(&cij) {
        let ctl = qa.fusion.cvec(t, l);
        let x = col_selector(a, &cij, t, k)?;
        let yb = row_selector(b, &cij_b, sigma[t], k)?;
        let left = d_assoc.mul(b, &w.delta_grid(qa.hat(&x, &unit_a(l)).grid()))?.scalar_right(&pt(&ctl))?.mul(b, phi_at(t, l).grid())?;
        let right = qb.hat(&yb.compose(b, phi_at(i, j))?, &unit_b(l));
        let term = left.mul(b, right.grid())?;
        lhs = Some(match lhs {
            None => term,
            Some(acc) => acc.add(&term)?,
        });
    }

    let cjl = qa.fusion.cvec(j, l);
    let cjl_b = qb.fusion.cvec(sigma[j], sigma[l]);
    let mut rhs: Option<Grid<S>> = None;
    for (t, k) in slots(&cjl) {
        let cit = qa.fusion.cvec(i, t);
        let x = col_selector(a, &cjl, t, k)?;
        let yb = row_selector(b, &cjl_b, sigma[t], k)?;
        let left = w.delta_grid(qa.hat(&unit_a(i), &x).grid()).scalar_right(&pt(&cit))?.mul(b, phi_at(i, t).grid())?;
        let right = qb.hat(&unit_b(i), &yb.compose(b, phi_at(j, l))?);
        let term = left.mul(b, right.grid())?.mul(b, qb.assoc.get(sigma[i], sigma[j], sigma[l]).grid())?;
        rhs = Some(match rhs {
            None => term,
            Some(acc) => acc.add(&term)?,
        });
    }
    match (lhs, rhs) {
        (Some(l), Some(r)) => Ok(l == r),
        _ => Err(Error::TypeMismatch("empty fusion product".into())),
    }
}

/// Exhaustive search for an η-witness between two quadruples of rank at
/// most 2 over an algebra of dimension at most 2, trying every assignment of
/// `candidates` to the coordinates of the gauge matrices.
#[cfg(feature = "witness-search")]
pub fn search_eta_witness<S: Field>(target: &Quadruple<S>, source: &Quadruple<S>, candidates: &[S]) -> Result<Option<EtaWitness<S>>> {
    let n = target.rank();
    let alg = &target.algebra;
    if n > 2 || alg.dim() > 2 {
        return Err(Error::OutOfRange("witness search is limited to rank ≤ 2 and dim A ≤ 2".into()));
    }
    // (pair, row, col, basis element) for every free coordinate
    let mut coords = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = target.fusion.cvec(i, j);
            let g = c.grades();
            for (r, &gr) in g.iter().enumerate() {
                for (col, &gc) in g.iter().enumerate() {
                    for &p in alg.peirce_basis(gr, gc) {
                        coords.push((i * n + j, r, col, p));
                    }
                }
            }
        }
    }
    let k = candidates.len();
    let total = k.checked_pow(coords.len() as u32).ok_or_else(|| Error::OutOfRange("search space too large".into()))?;
    for code in 0..total {
        let mut grids: Vec<Grid<S>> = (0..n * n)
            .map(|idx| {
                let size = target.fusion.cvec(idx / n, idx % n).size().max(1);
                Grid::zeros(size, size)
            })
            .collect();
        let mut rest = code;
        for &(pair, r, c, p) in &coords {
            let coeff = candidates[rest % k].clone();
            rest /= k;
            let entry = grids[pair].get(r, c).add(&AlgElement::basis(p).scale(&coeff));
            grids[pair].set(r, c, entry);
        }
        let w = EtaWitness::from_fn(n, |i, j| {
            let c = target.fusion.cvec(i, j);
            BlockMatrix::from_grid(alg, c.clone(), c, grids[i * n + j].clone()).expect("graded by construction")
        });
        if check_eta_equiv(target, source, &w).is_ok() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
