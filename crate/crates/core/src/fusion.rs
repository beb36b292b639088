//! Z+-rings with a finite unital basis: structure constants, products of
//! objects, and the Green-ring expression language.

use std::fmt;

use crate::error::{Error, Result};
use crate::report::{Locus, Report};

/// An object of the reconstructed category: multiplicities over the
/// indecomposables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub Vec<usize>);

impl Obj {
    pub fn zero(n: usize) -> Self {
        Obj(vec![0; n])
    }

    /// The basis vector `e_i` (0-based index).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Obj(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Total multiplicity `|m|`.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i]
    }

    /// First position of the `i`-th block.
    pub fn offset(&self, i: usize) -> usize {
        self.0[..i].iter().sum()
    }

    /// Grade of each position, in block order.
    pub fn grades(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat_n(i, m)).collect()
    }

    pub fn add(&self, other: &Obj) -> Obj {
        Obj(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `m^σ` with `(m^σ)_i = m_{σ⁻¹(i)}`.
    pub fn permute(&self, sigma: &[usize]) -> Obj {
        let mut out = vec![0; self.0.len()];
        for (i, &m) in self.0.iter().enumerate() {
            out[sigma[i]] = m;
        }
        Obj(out)
    }

    pub fn parse(s: &str, n: usize) -> Result<Obj> {
        let t = s.trim();
        let stripped = t.strip_prefix('e').map(|r| r.trim_start_matches('_'));
        if let Some(idx) = stripped {
            let i: usize = idx.parse().map_err(|_| Error::Malformed(format!("bad object {s:?}")))?;
            if i == 0 || i > n {
                return Err(Error::OutOfRange(format!("object e{i} with rank {n}")));
            }
            return Ok(Obj::unit(n, i - 1));
        }
        let v: Vec<usize> =
            t.split(',').map(|x| x.trim().parse().map_err(|_| Error::Malformed(format!("bad object {s:?}")))).collect::<Result<_>>()?;
        if v.len() != n {
            return Err(Error::Malformed(format!("object {s:?} has length {} but rank is {n}", v.len())));
        }
        Ok(Obj(v))
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Structure constants `c[i][j][k]` with unit at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    n: usize,
    c: Vec<usize>,
}

impl FusionRing {
    pub fn new(c: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let n = c.len();
        if n == 0 {
            return Err(Error::Malformed("fusion ring of rank 0".into()));
        }
        let mut flat = Vec::with_capacity(n * n * n);
        for (i, ci) in c.iter().enumerate() {
            if ci.len() != n {
                return Err(Error::Malformed(format!("fusion row {i} has length {}", ci.len())));
            }
            for (j, cij) in ci.iter().enumerate() {
                if cij.len() != n {
                    return Err(Error::Malformed(format!("fusion entry ({i},{j}) has length {}", cij.len())));
                }
                flat.extend_from_slice(cij);
            }
        }
        Ok(FusionRing { n, c: flat })
    }

    /// Build from products `r_i r_j` given as coordinate vectors.
    pub fn from_products(n: usize, f: impl Fn(usize, usize) -> Vec<usize>) -> Self {
        let mut c = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                assert_eq!(v.len(), n);
                c.extend(v);
            }
        }
        FusionRing { n, c }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> usize {
        self.c[(i * self.n + j) * self.n + k]
    }

    pub fn set_c(&mut self, i: usize, j: usize, k: usize, v: usize) {
        let n = self.n;
        self.c[(i * n + j) * n + k] = v;
    }

    /// `c_ij` as an object.
    pub fn cvec(&self, i: usize, j: usize) -> Obj {
        let start = (i * self.n + j) * self.n;
        Obj(self.c[start..start + self.n].to_vec())
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<usize>>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.cvec(i, j).0).collect()).collect()
    }

    /// `m ⊗̂ s = Σ m_i s_j c_ij`.
    pub fn obj_tensor(&self, m: &Obj, s: &Obj) -> Obj {
        let mut out = vec![0; self.n];
        for i in 0..self.n {
            if m.0[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                if s.0[j] == 0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += m.0[i] * s.0[j] * self.c(i, j, k);
                }
            }
        }
        Obj(out)
    }

    /// Product in the ring, bilinear in the coordinates.
    pub fn multiply(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.n];
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                if y[j] == 0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += x[i] * y[j] * self.c(i, j, k) as i64;
                }
            }
        }
        out
    }

    /// Unit axioms, nonvanishing products, and associativity of the
    /// structure constants.
    pub fn check(&self) -> Report {
        let n = self.n;
        let mut report = Report::new();
        let mut count = 0;
        for j in 0..n {
            for k in 0..n {
                count += 2;
                let d = usize::from(j == k);
                if self.c(0, j, k) != d {
                    report.fail("fusion.unit.left", Locus::new("j,k", [j, k]), format!("c_1jk = {}, expected {d}", self.c(0, j, k)));
                }
                if self.c(j, 0, k) != d {
                    report.fail("fusion.unit.right", Locus::new("i,k", [j, k]), format!("c_i1k = {}, expected {d}", self.c(j, 0, k)));
                }
            }
        }
        report.pass_count("fusion.unit", count);
        for i in 0..n {
            for j in 0..n {
                if self.cvec(i, j).is_zero() {
                    report.fail("fusion.nonzero-product", Locus::new("i,j", [i, j]), "r_i r_j = 0".to_string());
                }
            }
        }
        report.pass_count("fusion.nonzero-product", n * n);
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for t in 0..n {
                        let lhs: usize = (0..n).map(|k| self.c(i, j, k) * self.c(k, l, t)).sum();
                        let rhs: usize = (0..n).map(|k| self.c(j, l, k) * self.c(i, k, t)).sum();
                        if lhs != rhs {
                            report.fail(
                                "fusion.associativity",
                                Locus::new("i,j,l,t", [i, j, l, t]),
                                format!("sum_k c_ijk c_klt = {lhs}, sum_k c_jlk c_ikt = {rhs}"),
                            );
                        }
                    }
                }
            }
        }
        report.pass_count("fusion.associativity", n.pow(4));
        report
    }

    /// Evaluate a Green-ring expression such as `(r1+r2+r3+r4)^2`.
    pub fn eval_expression(&self, src: &str) -> Result<Vec<i64>> {
        let mut p = ExprParser { ring: self, src: src.as_bytes(), pos: 0 };
        let v = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(v)
    }
}

/// Render ring coordinates as `2r1+8r2-r3`.
pub fn format_ring_element(v: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if c.abs() != 1 {
            out.push_str(&c.abs().to_string());
        }
        out.push_str(&format!("r{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

// sum     := product (('+' | '-') product)*
// product := power (('*' | '·' | implicit) power)*
// power   := atom ('^' integer)?
// atom    := integer | 'r' integer | '(' sum ')' | '-' atom
struct ExprParser<'a> {
    ring: &'a FusionRing,
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Malformed(format!("{msg} at position {}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat_dot(&mut self) -> bool {
        // U+00B7 MIDDLE DOT is 0xC2 0xB7 in UTF-8.
        if self.src[self.pos..].starts_with(&[0xC2, 0xB7]) {
            self.pos += 2;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().map_err(|_| self.error("integer too large"))
    }

    fn scalar(&self, k: i64) -> Vec<i64> {
        let mut v = vec![0; self.ring.rank()];
        v[0] = k;
        v
    }

    fn sum(&mut self) -> Result<Vec<i64>> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.product()?;
                    acc.iter_mut().zip(rhs).for_each(|(a, b)| *a += b);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.product()?;
                    acc.iter_mut().zip(rhs).for_each(|(a, b)| *a -= b);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Vec<i64>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(0xC2) if self.eat_dot() => {}
                Some(b'r') | Some(b'(') => {}
                Some(c) if c.is_ascii_digit() => {}
                _ => return Ok(acc),
            }
            let rhs = self.power()?;
            acc = self.ring.multiply(&acc, &rhs);
        }
    }

    fn power(&mut self) -> Result<Vec<i64>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let mut acc = self.scalar(1);
            for _ in 0..e {
                acc = self.ring.multiply(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Vec<i64>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.atom()?.into_iter().map(|x| -x).collect())
            }
            Some(b'r') => {
                self.pos += 1;
                let i = self.integer()?;
                if i < 1 || i as usize > self.ring.rank() {
                    return Err(self.error(&format!("basis symbol r{i} out of range")));
                }
                let mut v = vec![0; self.ring.rank()];
                v[i as usize - 1] = 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.integer()?;
                Ok(self.scalar(k))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
