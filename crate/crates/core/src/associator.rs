//! Associator family on simple objects, its extension to all objects and
//! the coherence checks.

use rayon::prelude::*;

use crate::algebra::GradedAlgebra;
use crate::blockmat::{col_selector, inverse, row_selector, slots, BlockMatrix};
use crate::category::Quadruple;
use crate::error::{Error, Result};
use crate::fusion::{FusionRing, Obj};
use crate::linalg::Field;
use crate::report::{Locus, Report};

/// `a_{i,j,l}` for all triples, each a square matrix on `e_i ⊗̂ e_j ⊗̂ e_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct AssociatorFamily<S> {
    n: usize,
    mats: Vec<BlockMatrix<S>>,
}

/// The object `e_i ⊗̂ e_j ⊗̂ e_l`.
pub fn triple_type(fusion: &FusionRing, i: usize, j: usize, l: usize) -> Obj {
    let n = fusion.rank();
    fusion.obj_tensor(&fusion.cvec(i, j), &Obj::unit(n, l))
}

impl<S: Field> AssociatorFamily<S> {
    /// The strict family, every `a_{i,j,l}` an identity.
    pub fn identity(fusion: &FusionRing, alg: &GradedAlgebra<S>) -> Self {
        Self::from_fn(fusion.rank(), |i, j, l| BlockMatrix::identity(alg, &triple_type(fusion, i, j, l)))
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> BlockMatrix<S>) -> Self {
        let mut mats = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    mats.push(f(i, j, l));
                }
            }
        }
        AssociatorFamily { n, mats }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, l: usize) -> &BlockMatrix<S> {
        &self.mats[(i * self.n + j) * self.n + l]
    }

    /// Replace `a_{i,j,l}`; the type is checked by [`check_associator`].
    pub fn set(&mut self, i: usize, j: usize, l: usize, m: BlockMatrix<S>) {
        let n = self.n;
        self.mats[(i * n + j) * n + l] = m;
    }

    /// `a_{i,j,l}⁻¹` for every triple.
    pub fn inverses(&self, alg: &GradedAlgebra<S>) -> Result<Vec<BlockMatrix<S>>> {
        self.mats.iter().map(|m| inverse(alg, m)).collect()
    }
}

/// `a_{m,s,t}` by the selector-sum formula; the zero matrix `E_0` when the
/// triple product is zero.
pub fn extend<S: Field>(q: &Quadruple<S>, m: &Obj, s: &Obj, t: &Obj) -> BlockMatrix<S> {
    extend_with(q, m, s, t, |i, j, l| q.assoc.get(i, j, l).clone(), false)
}

/// `b_{m,s,t}`, the inverse of `a_{m,s,t}` assembled from `a_{i,j,l}⁻¹`.
pub fn inverse_extended<S: Field>(q: &Quadruple<S>, m: &Obj, s: &Obj, t: &Obj) -> Result<BlockMatrix<S>> {
    let invs = q.assoc.inverses(&q.algebra)?;
    let n = q.rank();
    Ok(extend_with(q, m, s, t, |i, j, l| invs[(i * n + j) * n + l].clone(), true))
}

fn extend_with<S: Field>(
    q: &Quadruple<S>,
    m: &Obj,
    s: &Obj,
    t: &Obj,
    family: impl Fn(usize, usize, usize) -> BlockMatrix<S>,
    inverse_form: bool,
) -> BlockMatrix<S> {
    let total = q.obj_tensor(&q.obj_tensor(m, s), t);
    if total.is_zero() {
        return BlockMatrix::zero(total.clone(), total);
    }
    let alg = &q.algebra;
    let mut acc = BlockMatrix::zero(total.clone(), total);
    let sel =
        |o: &Obj, i: usize, k: usize| (col_selector(alg, o, i, k).expect("valid slot"), row_selector(alg, o, i, k).expect("valid slot"));
    let sm = slots(m);
    let ss = slots(s);
    let st = slots(t);
    for &(i, k1) in &sm {
        let (xm, ym) = sel(m, i, k1);
        for &(j, k2) in &ss {
            let (xs, ys) = sel(s, j, k2);
            for &(l, k3) in &st {
                let (xt, yt) = sel(t, l, k3);
                let a = family(i, j, l);
                let (left, right) = if inverse_form {
                    (q.hat(&q.hat(&xm, &xs), &xt), q.hat(&ym, &q.hat(&ys, &yt)))
                } else {
                    (q.hat(&xm, &q.hat(&xs, &xt)), q.hat(&q.hat(&ym, &ys), &yt))
                };
                let term = left.compose(alg, &a).and_then(|z| z.compose(alg, &right)).expect("selector products are well typed");
                acc = acc.add(&term).expect("terms share the type of the total");
            }
        }
    }
    acc
}

/// Both sides of the reduced pentagon for `(i, j, l, t)`.
pub fn pentagon_sides<S: Field>(q: &Quadruple<S>, i: usize, j: usize, l: usize, t: usize) -> (BlockMatrix<S>, BlockMatrix<S>) {
    let n = q.rank();
    let alg = &q.algebra;
    let e = |k: usize| Obj::unit(n, k);
    let ident = |k: usize| BlockMatrix::identity(alg, &e(k));
    let a = |x: usize, y: usize, z: usize| q.assoc.get(x, y, z).clone();
    let lhs = q
        .hat(&ident(i), &a(j, l, t))
        .compose(alg, &extend(q, &e(i), &q.fusion.cvec(j, l), &e(t)))
        .and_then(|z| z.compose(alg, &q.hat(&a(i, j, l), &ident(t))))
        .expect("pentagon factors share one object");
    let rhs = extend(q, &e(i), &e(j), &q.fusion.cvec(l, t))
        .compose(alg, &extend(q, &q.fusion.cvec(i, j), &e(l), &e(t)))
        .expect("pentagon factors share one object");
    (lhs, rhs)
}

/// Both sides of the pentagon condition in its summed form on simple
/// objects `(i₁, i₂, i₃, i₄)`.
pub fn pentagon_summed_sides<S: Field>(q: &Quadruple<S>, i1: usize, i2: usize, i3: usize, i4: usize) -> (BlockMatrix<S>, BlockMatrix<S>) {
    let n = q.rank();
    let alg = &q.algebra;
    let ident = |k: usize| BlockMatrix::identity(alg, &Obj::unit(n, k));
    let a = |x: usize, y: usize, z: usize| q.assoc.get(x, y, z);
    let mul = |x: &BlockMatrix<S>, y: &BlockMatrix<S>| x.compose(alg, y).expect("well-typed pentagon term");
    let total = q.obj_tensor(&q.fusion.cvec(i1, i2), &q.fusion.cvec(i3, i4));

    let c23 = q.fusion.cvec(i2, i3);
    let mut lhs = BlockMatrix::zero(total.clone(), total.clone());
    for (j, k) in slots(&c23) {
        let x = col_selector(alg, &c23, j, k).expect("slot");
        let y = row_selector(alg, &c23, j, k).expect("slot");
        let first = q.hat(&ident(i1), &mul(a(i2, i3, i4), &q.hat(&x, &ident(i4))));
        let last = q.hat(&mul(&q.hat(&ident(i1), &y), a(i1, i2, i3)), &ident(i4));
        lhs = lhs.add(&mul(&mul(&first, a(i1, j, i4)), &last)).expect("same type");
    }

    let c34 = q.fusion.cvec(i3, i4);
    let c12 = q.fusion.cvec(i1, i2);
    let mut rhs = BlockMatrix::zero(total.clone(), total);
    for (j, k) in slots(&c34) {
        let x34 = col_selector(alg, &c34, j, k).expect("slot");
        let y34 = row_selector(alg, &c34, j, k).expect("slot");
        let first = mul(&q.hat(&ident(i1), &q.hat(&ident(i2), &x34)), a(i1, i2, j));
        for (jp, kp) in slots(&c12) {
            let x12 = col_selector(alg, &c12, jp, kp).expect("slot");
            let y12 = row_selector(alg, &c12, jp, kp).expect("slot");
            let middle = mul(&mul(&first, &q.hat(&x12, &y34)), a(jp, i3, i4));
            let last = q.hat(&q.hat(&y12, &ident(i3)), &ident(i4));
            rhs = rhs.add(&mul(&middle, &last)).expect("same type");
        }
    }
    (lhs, rhs)
}

/// Pentagon on arbitrary objects with extended associators.
pub fn pentagon_objects<S: Field>(q: &Quadruple<S>, m: [&Obj; 4]) -> bool {
    let alg = &q.algebra;
    let [m1, m2, m3, m4] = m;
    let lhs = q
        .hat(&q.identity(m1), &extend(q, m2, m3, m4))
        .compose(alg, &extend(q, m1, &q.obj_tensor(m2, m3), m4))
        .and_then(|z| z.compose(alg, &q.hat(&extend(q, m1, m2, m3), &q.identity(m4))));
    let rhs = extend(q, m1, m2, &q.obj_tensor(m3, m4)).compose(alg, &extend(q, &q.obj_tensor(m1, m2), m3, m4));
    matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
}

/// Types of every `a_{i,j,l}`.
pub fn check_associator_types<S: Field>(q: &Quadruple<S>) -> Report {
    let mut report = Report::new();
    let n = q.rank();
    if q.assoc.rank() != n {
        report.fail("assoc.type", Locus::from_vec("rank", vec![]), format!("family has rank {}", q.assoc.rank()));
        return report;
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let want = triple_type(&q.fusion, i, j, l);
                let a = q.assoc.get(i, j, l);
                if a.row_type() != &want || a.col_type() != &want {
                    report.fail(
                        "assoc.type",
                        Locus::new("i,j,l", [i, j, l]),
                        format!("type ({}),({}) but expected ({want}),({want})", a.row_type(), a.col_type()),
                    );
                }
            }
        }
    }
    report.pass_count("assoc.type", n * n * n);
    report
}

/// Invertibility, naturality on basis triples, the unit condition and the
/// reduced pentagon for all quadruples of simple objects.
pub fn check_associator<S: Field>(q: &Quadruple<S>) -> Report {
    let mut report = check_associator_types(q);
    if !report.is_ok() {
        return report;
    }
    let n = q.rank();
    let alg = &q.algebra;
    let d = alg.dim();

    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if let Err(e) = inverse(alg, q.assoc.get(i, j, l)) {
                    report.fail("assoc.invertible", Locus::new("i,j,l", [i, j, l]), e.to_string());
                }
            }
        }
    }
    report.pass_count("assoc.invertible", n * n * n);

    let natural: Vec<(usize, Vec<Locus>)> = (0..d)
        .into_par_iter()
        .map(|x| {
            let bx = BlockMatrix::basis_element(alg, x);
            let (xr, xc) = alg.grade(x);
            let mut bad = Vec::new();
            for y in 0..d {
                let by = BlockMatrix::basis_element(alg, y);
                let (yr, yc) = alg.grade(y);
                let xy = q.hat(&bx, &by);
                for z in 0..d {
                    let bz = BlockMatrix::basis_element(alg, z);
                    let (zr, zc) = alg.grade(z);
                    let lhs = q.hat(&bx, &q.hat(&by, &bz)).compose(alg, q.assoc.get(xc, yc, zc));
                    let rhs = q.assoc.get(xr, yr, zr).compose(alg, &q.hat(&xy, &bz));
                    if !matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r) {
                        bad.push(Locus::new("x,y,z", [x, y, z]));
                    }
                }
            }
            (d * d, bad)
        })
        .collect();
    let mut count = 0;
    for (c, bad) in natural {
        count += c;
        for locus in bad {
            report.fail("assoc.naturality", locus, "(x⊗(y⊗z))a differs from a((x⊗y)⊗z)".into());
        }
    }
    report.pass_count("assoc.naturality", count);

    for i in 0..n {
        for j in 0..n {
            if q.assoc.get(i, 0, j) != &q.identity(&q.fusion.cvec(i, j)) {
                report.fail("assoc.unit", Locus::new("i,1,j", [i, 0, j]), "a_{i,1,j} is not the identity".into());
            }
        }
    }
    report.pass_count("assoc.unit", n * n);

    let quads: Vec<[usize; 4]> = (0..n * n * n * n).map(|k| [k / (n * n * n), (k / (n * n)) % n, (k / n) % n, k % n]).collect();
    let failures: Vec<[usize; 4]> = quads
        .par_iter()
        .filter(|[i, j, l, t]| {
            let (lhs, rhs) = pentagon_sides(q, *i, *j, *l, *t);
            lhs != rhs
        })
        .copied()
        .collect();
    for idx in failures {
        report.fail("assoc.pentagon", Locus::new("i,j,l,t", idx), "pentagon sides differ".into());
    }
    report.pass_count("assoc.pentagon", quads.len());
    report
}

/// The summed pentagon condition for all quadruples; reported separately so
/// that it can be compared against the reduced form.
pub fn check_pentagon_summed<S: Field>(q: &Quadruple<S>) -> Report {
    let mut report = Report::new();
    let n = q.rank();
    let quads: Vec<[usize; 4]> = (0..n * n * n * n).map(|k| [k / (n * n * n), (k / (n * n)) % n, (k / n) % n, k % n]).collect();
    let failures: Vec<[usize; 4]> = quads
        .par_iter()
        .filter(|[a, b, c, d]| {
            let (lhs, rhs) = pentagon_summed_sides(q, *a, *b, *c, *d);
            lhs != rhs
        })
        .copied()
        .collect();
    for idx in failures {
        report.fail("assoc.pentagon-summed", Locus::new("i1,i2,i3,i4", idx), "summed pentagon sides differ".into());
    }
    report.pass_count("assoc.pentagon-summed", quads.len());
    report
}

/// `a_{m,s,t}` checked against the linear-algebra inverse of `b_{m,s,t}`.
pub fn extended_inverse_matches<S: Field>(q: &Quadruple<S>, m: &Obj, s: &Obj, t: &Obj) -> Result<bool> {
    let a = extend(q, m, s, t);
    if a.row_type().is_zero() {
        return Err(Error::TypeMismatch("triple product is zero".into()));
    }
    let b = inverse_extended(q, m, s, t)?;
    let id = q.identity(a.row_type());
    Ok(b.compose(&q.algebra, &a)? == id && a.compose(&q.algebra, &b)? == id)
}
