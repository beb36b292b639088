//! Exact dense linear algebra over a [`Field`].

mod field;
mod prime;

pub use field::{Field, FieldKind, Rational};
pub use prime::Fp;

use crate::error::Error;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Field> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(DenseMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Columns given as vectors of equal length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &S) -> Self {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} + {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Kronecker product with `self` as the outer factor.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if !b.is_zero() {
                            out.set(r1 * other.rows + r2, c1 * other.cols + c2, a.clone() * b.clone());
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns. Pivots are taken on the
    /// first nonzero entry scanning rows top to bottom in each column.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m.get(row, col).try_inverse().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(row, c).clone() * inv.clone();
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c).clone() - f.clone() * m.get(row, c).clone();
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self·v = 0}`, one vector per free column in increasing
    /// order, with a 1 in that free position.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(i, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!("inverse of non-square {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, S::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::NotInvertible(format!("rank {} < {n}", pivots.iter().filter(|&&p| p < n).count())));
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    /// Some `x` with `self·x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(i, self.cols).clone();
        }
        Some(x)
    }
}

/// Row-echelon basis of the span of `vectors` (all of length `dim`).
pub fn span_basis<S: Field>(dim: usize, vectors: &[Vec<S>]) -> Vec<Vec<S>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = DenseMatrix::from_columns(dim, vectors).transpose();
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Greedily pick, in order, those `candidates` that are independent modulo
/// `base` and the previously picked ones.
pub fn extend_independent<S: Field>(dim: usize, base: &[Vec<S>], candidates: &[Vec<S>]) -> Vec<usize> {
    let mut current: Vec<Vec<S>> = span_basis(dim, base);
    let mut rank = current.len();
    let mut picked = Vec::new();
    for (idx, c) in candidates.iter().enumerate() {
        let mut trial = current.clone();
        trial.push(c.clone());
        let b = span_basis(dim, &trial);
        if b.len() > rank {
            current = b;
            rank += 1;
            picked.push(idx);
        }
    }
    picked
}
