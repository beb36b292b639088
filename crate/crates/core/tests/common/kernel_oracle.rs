//! Brute-force annihilator modules, independent of the block-matrix
//! kernel machinery.

use tensor_recon::algebra::{AlgElement, GradedAlgebra};
use tensor_recon::{DenseMatrix, Rational};

use super::int;

pub type Elem = AlgElement<Rational>;

/// Coordinates of `x` in the full basis of `A`.
fn coords(alg: &GradedAlgebra<Rational>, x: &Elem) -> Vec<Rational> {
    (0..alg.dim()).map(|p| x.coeff(p)).collect()
}

fn span_dim(alg: &GradedAlgebra<Rational>, xs: &[Elem]) -> usize {
    if xs.is_empty() {
        return 0;
    }
    DenseMatrix::from_rows(xs.iter().map(|x| coords(alg, x)).collect()).unwrap().rank()
}

/// Basis of the `z` in a Peirce component with `product(x, z) = 0`.
fn annihilator_part(alg: &GradedAlgebra<Rational>, x: &Elem, part: &[usize], product: impl Fn(&Elem, &Elem) -> Elem) -> Vec<Elem> {
    if part.is_empty() {
        return Vec::new();
    }
    let images: Vec<Vec<Rational>> = part.iter().map(|&p| coords(alg, &product(x, &AlgElement::basis(p)))).collect();
    // columns are images of the basis of the Peirce component
    let rows: Vec<Vec<Rational>> = (0..alg.dim()).map(|r| images.iter().map(|c| c[r].clone()).collect()).collect();
    DenseMatrix::from_rows(rows)
        .unwrap()
        .nullspace()
        .into_iter()
        .map(|v| AlgElement::from_terms(part.iter().copied().zip(v).collect()))
        .collect()
}

/// Single generator `g ∈ e_a A e_t` of the right annihilator of
/// `x ∈ e_b A e_a` that generates it freely, found by trying every
/// basis vector of every graded piece.
pub fn right_kernel_generator(alg: &GradedAlgebra<Rational>, x: &Elem, a: usize) -> Option<(usize, Elem)> {
    let n = alg.rank();
    let mul = |u: &Elem, v: &Elem| alg.mul(u, v);
    let kernel: Vec<Vec<Elem>> = (0..n).map(|j| annihilator_part(alg, x, alg.peirce_basis(a, j), mul)).collect();
    for t in 0..n {
        for g in &kernel[t] {
            let generates = (0..n).all(|j| {
                let gen: Vec<Elem> = alg.peirce_basis(t, j).iter().map(|&p| alg.mul(g, &AlgElement::basis(p))).collect();
                let d = span_dim(alg, &gen);
                d == kernel[j].len() && d == alg.peirce_dim(t, j)
            });
            if generates {
                return Some((t, g.clone()));
            }
        }
    }
    None
}

/// Left-handed counterpart: `g ∈ e_t A e_b` with `g·x = 0` generating the
/// left annihilator of `x ∈ e_b A e_a` freely.
pub fn left_cokernel_generator(alg: &GradedAlgebra<Rational>, x: &Elem, b: usize) -> Option<(usize, Elem)> {
    let n = alg.rank();
    let mul = |u: &Elem, v: &Elem| alg.mul(v, u);
    let ann: Vec<Vec<Elem>> = (0..n).map(|i| annihilator_part(alg, x, alg.peirce_basis(i, b), mul)).collect();
    for t in 0..n {
        for g in &ann[t] {
            let generates = (0..n).all(|i| {
                let gen: Vec<Elem> = alg.peirce_basis(i, t).iter().map(|&p| alg.mul(&AlgElement::basis(p), g)).collect();
                let d = span_dim(alg, &gen);
                d == ann[i].len() && d == alg.peirce_dim(i, t)
            });
            if generates {
                return Some((t, g.clone()));
            }
        }
    }
    None
}

/// `y` is `λ g` for a nonzero scalar `λ`.
pub fn is_scalar_multiple(y: &Elem, g: &Elem) -> bool {
    let p = g.terms()[0].0;
    let lambda = y.coeff(p) / g.coeff(p);
    lambda != int(0) && &g.scale(&lambda) == y
}
