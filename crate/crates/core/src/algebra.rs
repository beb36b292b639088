//! Finite-dimensional algebras with a basis homogeneous for a complete set
//! of orthogonal idempotents.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{extend_independent, span_basis, DenseMatrix, Field, FieldKind};
use crate::report::{Locus, Report};

/// Sparse algebra element: `(basis index, coefficient)` sorted by index with
/// no zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgElement<S> {
    terms: Vec<(usize, S)>,
}

impl<S: Field> AlgElement<S> {
    pub fn zero() -> Self {
        AlgElement { terms: Vec::new() }
    }

    pub fn basis(p: usize) -> Self {
        AlgElement { terms: vec![(p, S::one())] }
    }

    pub fn from_terms(mut terms: Vec<(usize, S)>) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(usize, S)> = Vec::with_capacity(terms.len());
        for (p, c) in terms {
            match out.last_mut() {
                Some((q, acc)) if *q == p => *acc = acc.clone() + c,
                _ => out.push((p, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        AlgElement { terms: out }
    }

    pub fn terms(&self) -> &[(usize, S)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: usize) -> S {
        self.terms.binary_search_by_key(&p, |t| t.0).map_or_else(|_| S::zero(), |i| self.terms[i].1.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j].clone());
                j += 1;
            } else {
                let c = a[i].1.clone() + b[j].1.clone();
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        AlgElement { terms: out }
    }

    pub fn neg(&self) -> Self {
        AlgElement { terms: self.terms.iter().map(|(p, c)| (*p, -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        AlgElement { terms: self.terms.iter().map(|(p, c)| (*p, c.clone() * s.clone())).collect() }
    }

    /// Apply a linear map given on basis elements.
    pub fn map_linear(&self, images: &[AlgElement<S>]) -> Self {
        self.terms.iter().fold(Self::zero(), |acc, (p, c)| acc.add(&images[*p].scale(c)))
    }
}

/// A basis element and its Peirce grade `(row, col)`, 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub name: String,
    pub row: usize,
    pub col: usize,
}

/// Algebra given by structure constants on a graded basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedAlgebra<S> {
    n: usize,
    basis: Vec<BasisElem>,
    idem: Vec<usize>,
    table: Vec<AlgElement<S>>,
    peirce: Vec<Vec<usize>>,
    peirce_pos: Vec<usize>,
}

impl<S: Field> GradedAlgebra<S> {
    /// `products` lists the nonzero products of basis elements.
    pub fn new(n: usize, basis: Vec<BasisElem>, idem: Vec<usize>, products: Vec<(usize, usize, AlgElement<S>)>) -> Result<Self> {
        let d = basis.len();
        let mut names = HashSet::new();
        for (p, b) in basis.iter().enumerate() {
            if b.row >= n || b.col >= n {
                return Err(Error::OutOfRange(format!("grade of basis element {} ({})", p, b.name)));
            }
            if b.name.is_empty() || !b.name.is_ascii() || !names.insert(b.name.clone()) {
                return Err(Error::Malformed(format!("basis name {:?} is empty, non-ASCII or repeated", b.name)));
            }
        }
        if idem.len() != n {
            return Err(Error::Malformed(format!("{} idempotents for rank {n}", idem.len())));
        }
        if let Some(&bad) = idem.iter().find(|&&p| p >= d) {
            return Err(Error::OutOfRange(format!("idempotent index {bad}")));
        }
        let mut table = vec![AlgElement::zero(); d * d];
        for (p, q, v) in products {
            if p >= d || q >= d || v.terms.iter().any(|t| t.0 >= d) {
                return Err(Error::OutOfRange(format!("product ({p},{q})")));
            }
            table[p * d + q] = table[p * d + q].add(&v);
        }
        let mut peirce = vec![Vec::new(); n * n];
        let mut peirce_pos = vec![0; d];
        for (p, b) in basis.iter().enumerate() {
            let cell = &mut peirce[b.row * n + b.col];
            peirce_pos[p] = cell.len();
            cell.push(p);
        }
        Ok(GradedAlgebra { n, basis, idem, table, peirce, peirce_pos })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn name(&self, p: usize) -> &str {
        &self.basis[p].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn grade(&self, p: usize) -> (usize, usize) {
        (self.basis[p].row, self.basis[p].col)
    }

    pub fn idempotent(&self, i: usize) -> usize {
        self.idem[i]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idem
    }

    /// Basis indices of grade `(i, j)`.
    pub fn peirce_basis(&self, i: usize, j: usize) -> &[usize] {
        &self.peirce[i * self.n + j]
    }

    pub fn peirce_basis_checked(&self, i: usize, j: usize) -> Result<&[usize]> {
        if i >= self.n || j >= self.n {
            return Err(Error::OutOfRange(format!("Peirce component ({},{}) of rank {}", i + 1, j + 1, self.n)));
        }
        Ok(self.peirce_basis(i, j))
    }

    /// Basis indices whose row grade is `i`.
    pub fn basis_with_row(&self, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&p| self.basis[p].row == i).collect()
    }

    pub fn peirce_dim(&self, i: usize, j: usize) -> usize {
        self.peirce[i * self.n + j].len()
    }

    pub fn mul_basis(&self, p: usize, q: usize) -> &AlgElement<S> {
        &self.table[p * self.dim() + q]
    }

    pub fn mul(&self, a: &AlgElement<S>, b: &AlgElement<S>) -> AlgElement<S> {
        if a.is_zero() || b.is_zero() {
            return AlgElement::zero();
        }
        let mut terms = Vec::new();
        for (p, x) in &a.terms {
            for (q, y) in &b.terms {
                let prod = self.mul_basis(*p, *q);
                if prod.is_zero() {
                    continue;
                }
                let xy = x.clone() * y.clone();
                for (r, z) in &prod.terms {
                    terms.push((*r, xy.clone() * z.clone()));
                }
            }
        }
        AlgElement::from_terms(terms)
    }

    pub fn unit_element(&self) -> AlgElement<S> {
        AlgElement::from_terms(self.idem.iter().map(|&p| (p, S::one())).collect())
    }

    /// Whether every term of `x` has grade `(i, j)`.
    pub fn in_peirce(&self, x: &AlgElement<S>, i: usize, j: usize) -> bool {
        x.terms.iter().all(|(p, _)| self.grade(*p) == (i, j))
    }

    /// Coordinates of `x` in the basis of `e_i A e_j` (other terms ignored).
    pub fn coords(&self, x: &AlgElement<S>, i: usize, j: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.peirce_dim(i, j)];
        for (p, c) in &x.terms {
            if self.grade(*p) == (i, j) {
                v[self.peirce_pos[*p]] = c.clone();
            }
        }
        v
    }

    pub fn from_coords(&self, i: usize, j: usize, v: &[S]) -> AlgElement<S> {
        AlgElement::from_terms(self.peirce_basis(i, j).iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(&p, c)| (p, c.clone())).collect())
    }

    /// The algebra with reversed multiplication and transposed grades.
    pub fn opposite(&self) -> Self {
        let d = self.dim();
        let basis = self.basis.iter().map(|b| BasisElem { name: b.name.clone(), row: b.col, col: b.row }).collect();
        let mut products = Vec::new();
        for p in 0..d {
            for q in 0..d {
                let v = self.mul_basis(q, p);
                if !v.is_zero() {
                    products.push((p, q, v.clone()));
                }
            }
        }
        GradedAlgebra::new(self.n, basis, self.idem.clone(), products).expect("opposite of a valid algebra")
    }

    pub fn is_semisimple_by_dimension(&self) -> bool {
        self.dim() == self.n
    }

    /// Jacobson radical as the kernel of the trace form, graded by Peirce
    /// components. Requires characteristic 0.
    pub fn radical(&self, field: &FieldKind) -> Result<Radical<S>> {
        if self.is_semisimple_by_dimension() {
            return Ok(Radical { n: self.n, parts: vec![Vec::new(); self.n * self.n] });
        }
        if field.characteristic() != 0 {
            return Err(Error::UnsupportedCharacteristic(field.characteristic()));
        }
        let d = self.dim();
        let traces: Vec<S> = (0..d).map(|s| (0..d).fold(S::zero(), |acc, q| acc + self.mul_basis(s, q).coeff(q))).collect();
        let mut gram = DenseMatrix::zeros(d, d);
        for p in 0..d {
            for r in 0..d {
                let v = self.mul_basis(p, r).terms.iter().fold(S::zero(), |acc, (s, c)| acc + c.clone() * traces[*s].clone());
                gram.set(p, r, v);
            }
        }
        let kernel = gram.nullspace();
        let mut parts = vec![Vec::new(); self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                let pb = self.peirce_basis(i, j);
                let projected: Vec<Vec<S>> = kernel.iter().map(|v| pb.iter().map(|&p| v[p].clone()).collect()).collect();
                parts[i * self.n + j] = span_basis(pb.len(), &projected);
            }
        }
        Ok(Radical { n: self.n, parts })
    }

    /// Structural axioms, (KS) and split-local idempotents.
    pub fn check(&self, field: &FieldKind) -> Report {
        let mut report = Report::new();
        let d = self.dim();
        let n = self.n;
        let b = |p: usize| AlgElement::<S>::basis(p);

        for p in 0..d {
            for q in 0..d {
                let pq = self.mul_basis(p, q);
                for r in 0..d {
                    let lhs = self.mul(pq, &b(r));
                    let rhs = self.mul(&b(p), self.mul_basis(q, r));
                    if lhs != rhs {
                        report.fail(
                            "algebra.associativity",
                            Locus::new("p,q,r", [p, q, r]),
                            format!(
                                "({}·{})·{} != {}·({}·{})",
                                self.name(p),
                                self.name(q),
                                self.name(r),
                                self.name(p),
                                self.name(q),
                                self.name(r)
                            ),
                        );
                    }
                }
            }
        }
        report.pass_count("algebra.associativity", d * d * d);

        for p in 0..d {
            for q in 0..d {
                let (i, j) = self.grade(p);
                let (k, l) = self.grade(q);
                let v = self.mul_basis(p, q);
                let ok = if j != k { v.is_zero() } else { self.in_peirce(v, i, l) };
                if !ok {
                    report.fail(
                        "algebra.grading",
                        Locus::new("p,q", [p, q]),
                        format!("{}·{} is not in the expected Peirce component", self.name(p), self.name(q)),
                    );
                }
            }
        }
        report.pass_count("algebra.grading", d * d);

        for i in 0..n {
            let ei = self.idem[i];
            if self.grade(ei) != (i, i) {
                report.fail("algebra.idempotents", Locus::new("i", [i]), format!("e{} has grade off the diagonal", i + 1));
            }
            for j in 0..n {
                let expect = if i == j { b(ei) } else { AlgElement::zero() };
                if self.mul_basis(ei, self.idem[j]) != &expect {
                    report.fail("algebra.idempotents", Locus::new("i,j", [i, j]), "e_i e_j != δ_ij e_i".to_string());
                }
            }
        }
        let one = self.unit_element();
        for p in 0..d {
            if self.mul(&one, &b(p)) != b(p) || self.mul(&b(p), &one) != b(p) {
                report.fail("algebra.unit", Locus::new("p", [p]), format!("sum of idempotents does not fix {}", self.name(p)));
            }
        }
        report.pass_count("algebra.idempotents", n * n + n);
        report.pass_count("algebra.unit", d);

        if self.peirce_dim(0, 0) != 1 {
            report.fail("algebra.dim-e1Ae1", Locus::new("i", [0]), format!("dim e1Ae1 = {}", self.peirce_dim(0, 0)));
        }
        report.pass_count("algebra.dim-e1Ae1", 1);

        let rad = match self.radical(field) {
            Ok(r) => r,
            Err(e) => {
                report.skip("algebra.KS", e.to_string());
                report.skip("algebra.split-local", e.to_string());
                return report;
            }
        };
        for i in 0..n {
            let rad_ii = rad.part(i, i);
            let dim_ii = self.peirce_dim(i, i);
            for j in (0..n).filter(|&j| j != i) {
                for &p in self.peirce_basis(i, j) {
                    for &q in self.peirce_basis(j, i) {
                        let c = self.coords(self.mul_basis(p, q), i, i);
                        if !extend_independent(dim_ii, rad_ii, &[c]).is_empty() {
                            report.fail(
                                "algebra.KS",
                                Locus::new("i,j", [i, j]),
                                format!("{}·{} is not in rad(e{}Ae{})", self.name(p), self.name(q), i + 1, i + 1),
                            );
                        }
                    }
                }
            }
            if dim_ii - rad_ii.len() != 1 {
                report.fail("algebra.split-local", Locus::new("i", [i]), format!("dim e{0}Ae{0}/rad = {1}", i + 1, dim_ii - rad_ii.len()));
            }
        }
        report.pass_count("algebra.KS", n * (n - 1));
        report.pass_count("algebra.split-local", n);
        report
    }
}

/// Radical split into Peirce components; each part is a row-echelon basis
/// in the coordinates of `e_i A e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Radical<S> {
    n: usize,
    parts: Vec<Vec<Vec<S>>>,
}

impl<S: Field> Radical<S> {
    pub fn part(&self, i: usize, j: usize) -> &[Vec<S>] {
        &self.parts[i * self.n + j]
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    /// The same radical inside the opposite algebra.
    pub fn opposite(&self) -> Radical<S> {
        let n = self.n;
        let parts = (0..n * n).map(|k| self.parts[(k % n) * n + k / n].clone()).collect();
        Radical { n, parts }
    }

    /// Radical basis as algebra elements, ordered by Peirce grade.
    pub fn elements(&self, alg: &GradedAlgebra<S>) -> Vec<AlgElement<S>> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                out.extend(self.part(i, j).iter().map(|v| alg.from_coords(i, j, v)));
            }
        }
        out
    }
}

impl<S: Field> fmt::Display for AlgElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("{c}*b{p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Field> GradedAlgebra<S> {
    /// Render with basis names, e.g. `-x43x32` or `2*e1 + x21`.
    pub fn format(&self, x: &AlgElement<S>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (p, c)) in x.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if neg {
                out.push('-');
            } else if k > 0 {
                out.push('+');
            }
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            out.push_str(self.name(*p));
        }
        out
    }
}
