//! Typed matrices over a graded algebra.
//!
//! An `(m, s)`-type matrix has its rows grouped by grade according to `m`
//! and its columns according to `s`; the entry in a row of grade `i` and a
//! column of grade `j` lies in `e_i A e_j`. Such a matrix is a morphism from
//! the object `s` to the object `m`. Zero types keep the 1×k / k×1 / 1×1 zero
//! shapes.

use crate::algebra::{AlgElement, GradedAlgebra, Radical};
use crate::error::{Error, Result};
use crate::fusion::Obj;
use crate::linalg::{extend_independent, DenseMatrix, Field};

/// Plain matrix over `A`, no grading attached.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid<S> {
    rows: usize,
    cols: usize,
    entries: Vec<AlgElement<S>>,
}

impl<S: Field> Grid<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Grid { rows, cols, entries: vec![AlgElement::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> AlgElement<S>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Grid { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &AlgElement<S> {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: AlgElement<S>) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(AlgElement::is_zero)
    }

    pub fn mul(&self, alg: &GradedAlgebra<S>, other: &Grid<S>) -> Result<Grid<S>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Grid::zeros(self.rows, other.cols);
        let other_nz: Vec<Vec<usize>> =
            (0..other.rows).map(|k| (0..other.cols).filter(|&c| !other.get(k, c).is_zero()).collect()).collect();
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for &c in &other_nz[k] {
                    let prod = alg.mul(a, other.get(k, c));
                    if !prod.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] = out.entries[idx].add(&prod);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Grid<S>) -> Result<Grid<S>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("grid sum".into()));
        }
        Ok(Grid { rows: self.rows, cols: self.cols, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn transpose(&self) -> Grid<S> {
        Grid::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// `p · self` for a scalar matrix `p`.
    pub fn scalar_left(&self, p: &DenseMatrix<S>) -> Result<Grid<S>> {
        if p.cols() != self.rows {
            return Err(Error::DimensionMismatch("scalar left product".into()));
        }
        let mut out = Grid::zeros(p.rows(), self.cols);
        for r in 0..p.rows() {
            for k in 0..p.cols() {
                let s = p.get(r, k);
                if s.is_zero() {
                    continue;
                }
                for c in 0..self.cols {
                    let v = self.get(k, c);
                    if !v.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] = out.entries[idx].add(&v.scale(s));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · p` for a scalar matrix `p`.
    pub fn scalar_right(&self, p: &DenseMatrix<S>) -> Result<Grid<S>> {
        Ok(self.transpose().scalar_left(&p.transpose())?.transpose())
    }

    pub fn vconcat(&self, other: &Grid<S>) -> Result<Grid<S>> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vertical concatenation".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Grid { rows: self.rows + other.rows, cols: self.cols, entries })
    }

    pub fn hconcat(&self, other: &Grid<S>) -> Result<Grid<S>> {
        Ok(self.transpose().vconcat(&other.transpose())?.transpose())
    }

    /// Apply an algebra map entrywise.
    pub fn map_entries(&self, f: impl Fn(&AlgElement<S>) -> AlgElement<S>) -> Grid<S> {
        Grid { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }
}

/// An `(m, s)`-type matrix over `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockMatrix<S> {
    row_type: Obj,
    col_type: Obj,
    row_grades: Vec<usize>,
    col_grades: Vec<usize>,
    grid: Grid<S>,
}

fn shape_len(t: &Obj) -> usize {
    t.size().max(1)
}

impl<S: Field> BlockMatrix<S> {
    pub fn zero(row_type: Obj, col_type: Obj) -> Self {
        let grid = Grid::zeros(shape_len(&row_type), shape_len(&col_type));
        BlockMatrix { row_grades: row_type.grades(), col_grades: col_type.grades(), row_type, col_type, grid }
    }

    /// `E_m`; `E_0` is the 1×1 zero matrix.
    pub fn identity(alg: &GradedAlgebra<S>, m: &Obj) -> Self {
        let mut x = Self::zero(m.clone(), m.clone());
        for (r, &g) in x.row_grades.clone().iter().enumerate() {
            x.grid.set(r, r, AlgElement::basis(alg.idempotent(g)));
        }
        x
    }

    /// Wrap a grid, checking shape and grades.
    pub fn from_grid(alg: &GradedAlgebra<S>, row_type: Obj, col_type: Obj, grid: Grid<S>) -> Result<Self> {
        if grid.rows != shape_len(&row_type) || grid.cols != shape_len(&col_type) {
            return Err(Error::TypeMismatch(format!(
                "grid is {}x{} but type ({row_type}),({col_type}) needs {}x{}",
                grid.rows,
                grid.cols,
                shape_len(&row_type),
                shape_len(&col_type)
            )));
        }
        let x = BlockMatrix { row_grades: row_type.grades(), col_grades: col_type.grades(), row_type, col_type, grid };
        x.check_grades(alg)?;
        Ok(x)
    }

    pub(crate) fn from_grid_unchecked(row_type: Obj, col_type: Obj, grid: Grid<S>) -> Self {
        debug_assert_eq!(grid.rows, shape_len(&row_type));
        debug_assert_eq!(grid.cols, shape_len(&col_type));
        BlockMatrix { row_grades: row_type.grades(), col_grades: col_type.grades(), row_type, col_type, grid }
    }

    pub fn from_rows(alg: &GradedAlgebra<S>, row_type: Obj, col_type: Obj, rows: Vec<Vec<AlgElement<S>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::TypeMismatch("ragged rows".into()));
        }
        let grid = Grid { rows: r, cols: c, entries: rows.into_iter().flatten().collect() };
        Self::from_grid(alg, row_type, col_type, grid)
    }

    /// `x` as a 1×1 matrix of type `(e_i, e_j)` where `(i, j)` is its grade.
    pub fn element(alg: &GradedAlgebra<S>, i: usize, j: usize, x: AlgElement<S>) -> Result<Self> {
        let n = alg.rank();
        let grid = Grid { rows: 1, cols: 1, entries: vec![x] };
        Self::from_grid(alg, Obj::unit(n, i), Obj::unit(n, j), grid)
    }

    /// The basis element `p` as a 1×1 matrix.
    pub fn basis_element(alg: &GradedAlgebra<S>, p: usize) -> Self {
        let (i, j) = alg.grade(p);
        Self::element(alg, i, j, AlgElement::basis(p)).expect("basis element has its own grade")
    }

    fn check_grades(&self, alg: &GradedAlgebra<S>) -> Result<()> {
        for r in 0..self.grid.rows {
            for c in 0..self.grid.cols {
                let x = self.grid.get(r, c);
                if x.is_zero() {
                    continue;
                }
                match (self.row_grades.get(r), self.col_grades.get(c)) {
                    (Some(&i), Some(&j)) if alg.in_peirce(x, i, j) => {}
                    _ => {
                        return Err(Error::TypeMismatch(format!("entry ({},{}) is not in the Peirce component of its block", r + 1, c + 1)))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn row_type(&self) -> &Obj {
        &self.row_type
    }

    pub fn col_type(&self) -> &Obj {
        &self.col_type
    }

    pub fn rows(&self) -> usize {
        self.grid.rows
    }

    pub fn cols(&self) -> usize {
        self.grid.cols
    }

    pub fn row_grade(&self, r: usize) -> Option<usize> {
        self.row_grades.get(r).copied()
    }

    pub fn col_grade(&self, c: usize) -> Option<usize> {
        self.col_grades.get(c).copied()
    }

    pub fn get(&self, r: usize, c: usize) -> &AlgElement<S> {
        self.grid.get(r, c)
    }

    pub fn grid(&self) -> &Grid<S> {
        &self.grid
    }

    pub fn into_grid(self) -> Grid<S> {
        self.grid
    }

    pub fn is_zero(&self) -> bool {
        self.grid.is_zero()
    }

    pub fn is_square_type(&self) -> bool {
        self.row_type == self.col_type
    }

    pub fn same_type(&self, other: &Self) -> bool {
        self.row_type == other.row_type && self.col_type == other.col_type
    }

    /// Composition `self ∘ other`, i.e. the matrix product.
    pub fn compose(&self, alg: &GradedAlgebra<S>, other: &Self) -> Result<Self> {
        if self.col_type != other.row_type {
            return Err(Error::TypeMismatch(format!(
                "cannot compose ({}),({}) with ({}),({})",
                self.row_type, self.col_type, other.row_type, other.col_type
            )));
        }
        let grid = self.grid.mul(alg, &other.grid)?;
        Ok(Self::from_grid_unchecked(self.row_type.clone(), other.col_type.clone(), grid))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !self.same_type(other) {
            return Err(Error::TypeMismatch("sum of matrices of different types".into()));
        }
        Ok(Self::from_grid_unchecked(self.row_type.clone(), self.col_type.clone(), self.grid.add(&other.grid)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_entries(AlgElement::neg)
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map_entries(|x| x.scale(s))
    }

    fn map_entries(&self, f: impl Fn(&AlgElement<S>) -> AlgElement<S>) -> Self {
        Self::from_grid_unchecked(self.row_type.clone(), self.col_type.clone(), self.grid.map_entries(f))
    }

    /// Transpose; a matrix over `A` becomes a matrix over `A^op`.
    pub fn transpose(&self) -> Self {
        Self::from_grid_unchecked(self.col_type.clone(), self.row_type.clone(), self.grid.transpose())
    }

    /// `X ⊕̲ Y`: row blocks interleaved grade by grade.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.col_type != other.col_type {
            return Err(Error::TypeMismatch("vstack needs equal column types".into()));
        }
        pi_rearrange(&[vec![self.clone()], vec![other.clone()]])
    }

    /// `X ⊕̄ Y`: column blocks interleaved grade by grade.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.row_type != other.row_type {
            return Err(Error::TypeMismatch("hstack needs equal row types".into()));
        }
        pi_rearrange(&[vec![self.clone(), other.clone()]])
    }

    /// Dense rows, one entry per position.
    pub fn to_rows(&self) -> Vec<Vec<AlgElement<S>>> {
        (0..self.rows()).map(|r| (0..self.cols()).map(|c| self.get(r, c).clone()).collect()).collect()
    }
}

/// Global position of local index `u` of block `l` after rearranging blocks
/// of types `types` grade by grade: all grade-1 positions (block by block),
/// then grade 2, and so on.
pub fn pi_index_map(types: &[Obj]) -> Vec<Vec<usize>> {
    let n = types.first().map_or(0, Obj::rank);
    let mut total = vec![0usize; n];
    for t in types {
        for (k, tot) in total.iter_mut().enumerate() {
            *tot += t.get(k);
        }
    }
    let mut grade_start = vec![0usize; n];
    for k in 1..n {
        grade_start[k] = grade_start[k - 1] + total[k - 1];
    }
    let mut seen = vec![0usize; n];
    types
        .iter()
        .map(|t| {
            let mut map = Vec::with_capacity(t.size());
            for k in 0..n {
                for w in 0..t.get(k) {
                    map.push(grade_start[k] + seen[k] + w);
                }
                seen[k] += t.get(k);
            }
            map
        })
        .collect()
}

fn sum_types(types: &[Obj], n: usize) -> Obj {
    types.iter().fold(Obj::zero(n), |acc, t| acc.add(t))
}

/// `Π`: assemble a grid of blocks into one typed matrix by nesting `⊕̄`
/// along rows and `⊕̲` down columns.
pub fn pi_rearrange<S: Field>(grid: &[Vec<BlockMatrix<S>>]) -> Result<BlockMatrix<S>> {
    let r = grid.len();
    let l = grid.first().map_or(0, Vec::len);
    if r == 0 || l == 0 || grid.iter().any(|row| row.len() != l) {
        return Err(Error::TypeMismatch("ragged or empty grid".into()));
    }
    let n = grid[0][0].row_type().rank();
    let row_types: Vec<Obj> = grid.iter().map(|row| row[0].row_type().clone()).collect();
    let col_types: Vec<Obj> = grid[0].iter().map(|b| b.col_type().clone()).collect();
    for (a, row) in grid.iter().enumerate() {
        for (b, blk) in row.iter().enumerate() {
            if blk.row_type() != &row_types[a] || blk.col_type() != &col_types[b] {
                return Err(Error::TypeMismatch(format!("grid block ({},{}) has inconsistent type", a + 1, b + 1)));
            }
        }
    }
    let rmap = pi_index_map(&row_types);
    let cmap = pi_index_map(&col_types);
    let mut out = BlockMatrix::zero(sum_types(&row_types, n), sum_types(&col_types, n));
    for (a, row) in grid.iter().enumerate() {
        for (b, blk) in row.iter().enumerate() {
            for (u, &gr) in rmap[a].iter().enumerate() {
                for (v, &gc) in cmap[b].iter().enumerate() {
                    let x = blk.get(u, v);
                    if !x.is_zero() {
                        out.grid.set(gr, gc, x.clone());
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `P_{m,m'}`: sends `[X; Y]` to `X ⊕̲ Y`.
pub fn perm_pair<S: Field>(m: &Obj, m2: &Obj) -> DenseMatrix<S> {
    let size = m.size() + m2.size();
    let mut p = DenseMatrix::zeros(size, size);
    let mut out_row = 0;
    for i in 0..m.rank() {
        for w in 0..m.get(i) {
            p.set(out_row, m.offset(i) + w, S::one());
            out_row += 1;
        }
        for w in 0..m2.get(i) {
            p.set(out_row, m.size() + m2.offset(i) + w, S::one());
            out_row += 1;
        }
    }
    p
}

/// `P_{m_1,…,m_r}` by the recursion
/// `P_{m_1..m_r} = P_{m_1+…+m_{r-1}, m_r} · diag(P_{m_1..m_{r-1}}, I)`.
pub fn perm_matrix<S: Field>(types: &[Obj]) -> DenseMatrix<S> {
    match types.len() {
        0 => DenseMatrix::zeros(0, 0),
        1 => DenseMatrix::identity(types[0].size()),
        r => {
            let head = &types[..r - 1];
            let last = &types[r - 1];
            let n = last.rank();
            let outer = perm_pair::<S>(&sum_types(head, n), last);
            let inner = perm_matrix::<S>(head).direct_sum(&DenseMatrix::identity(last.size()));
            outer.mul(&inner).expect("square permutation factors")
        }
    }
}

/// Homogeneous matrix over `A ⊗ A` in the layout of `X ⊗_F Y`: the entry
/// at row `r'·rows(X) + r`, column `c'·cols(X) + c` is `x_{rc} ⊗ y_{r'c'}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorGrid<S> {
    pub rows: usize,
    pub cols: usize,
    /// Sparse `(p, q, coeff)` terms of each entry, row-major.
    pub entries: Vec<Vec<(usize, usize, S)>>,
    /// `(grade in X, grade in Y)` of each row; `None` for zero-type rows.
    pub row_grades: Vec<Option<(usize, usize)>>,
    pub col_grades: Vec<Option<(usize, usize)>>,
}

/// `X ⊗_F Y` with the outer index taken from `Y`.
pub fn outer_tensor<S: Field>(x: &BlockMatrix<S>, y: &BlockMatrix<S>) -> TensorGrid<S> {
    let rows = x.rows() * y.rows();
    let cols = x.cols() * y.cols();
    let mut entries = Vec::with_capacity(rows * cols);
    for rp in 0..y.rows() {
        for r in 0..x.rows() {
            for cp in 0..y.cols() {
                for c in 0..x.cols() {
                    let mut terms = Vec::new();
                    for (p, a) in x.get(r, c).terms() {
                        for (q, b) in y.get(rp, cp).terms() {
                            terms.push((*p, *q, a.clone() * b.clone()));
                        }
                    }
                    entries.push(terms);
                }
            }
        }
    }
    let pair = |a: Option<usize>, b: Option<usize>| a.zip(b);
    let row_grades =
        (0..y.rows()).flat_map(|rp| (0..x.rows()).map(move |r| (r, rp))).map(|(r, rp)| pair(x.row_grade(r), y.row_grade(rp))).collect();
    let col_grades =
        (0..y.cols()).flat_map(|cp| (0..x.cols()).map(move |c| (c, cp))).map(|(c, cp)| pair(x.col_grade(c), y.col_grade(cp))).collect();
    TensorGrid { rows, cols, entries, row_grades, col_grades }
}

/// `X^m_{i,k}`: the `(m, e_i)`-type column with `e_i` in slot `k` of block
/// `i` (all indices 0-based).
pub fn col_selector<S: Field>(alg: &GradedAlgebra<S>, m: &Obj, i: usize, k: usize) -> Result<BlockMatrix<S>> {
    Ok(row_selector(alg, m, i, k)?.transpose())
}

/// `Y^m_{i,k}`: the `(e_i, m)`-type row with `e_i` in slot `k` of block `i`.
pub fn row_selector<S: Field>(alg: &GradedAlgebra<S>, m: &Obj, i: usize, k: usize) -> Result<BlockMatrix<S>> {
    if i >= m.rank() || k >= m.get(i) {
        return Err(Error::OutOfRange(format!("selector ({},{}) for object ({m})", i + 1, k + 1)));
    }
    let mut y = BlockMatrix::zero(Obj::unit(m.rank(), i), m.clone());
    y.grid.set(0, m.offset(i) + k, AlgElement::basis(alg.idempotent(i)));
    Ok(y)
}

/// Every `(i, k)` with `k < m_i`, in block order.
pub fn slots(m: &Obj) -> Vec<(usize, usize)> {
    (0..m.rank()).flat_map(|i| (0..m.get(i)).map(move |k| (i, k))).collect()
}

// ---------------------------------------------------------------------------
// Realization as maps of projective right modules.
//
// A column of grade `j` under the row type `t` is a vector in
// `V_j(t) = ⊕_r e_{g(r)} A e_j`; left multiplication by an `(m, t)`-type
// matrix maps `V_j(t)` to `V_j(m)`.

fn column_dim<S: Field>(alg: &GradedAlgebra<S>, grades: &[usize], j: usize) -> usize {
    grades.iter().map(|&g| alg.peirce_dim(g, j)).sum()
}

fn column_to_coords<S: Field>(alg: &GradedAlgebra<S>, grades: &[usize], col: &[AlgElement<S>], j: usize) -> Vec<S> {
    grades.iter().zip(col).flat_map(|(&g, x)| alg.coords(x, g, j)).collect()
}

fn coords_to_column<S: Field>(alg: &GradedAlgebra<S>, grades: &[usize], v: &[S], j: usize) -> Vec<AlgElement<S>> {
    let mut pos = 0;
    grades
        .iter()
        .map(|&g| {
            let d = alg.peirce_dim(g, j);
            let x = alg.from_coords(g, j, &v[pos..pos + d]);
            pos += d;
            x
        })
        .collect()
}

/// Matrix of `v ↦ x·v` from `V_j(col type)` to `V_j(row type)`.
pub fn left_mult_operator<S: Field>(alg: &GradedAlgebra<S>, x: &BlockMatrix<S>, j: usize) -> DenseMatrix<S> {
    let out_dim = column_dim(alg, &x.row_grades, j);
    let mut columns = Vec::new();
    for (c, &g) in x.col_grades.iter().enumerate() {
        for &b in alg.peirce_basis(g, j) {
            let basis_el = AlgElement::basis(b);
            let image: Vec<AlgElement<S>> = (0..x.row_grades.len()).map(|r| alg.mul(x.get(r, c), &basis_el)).collect();
            columns.push(column_to_coords(alg, &x.row_grades, &image, j));
        }
    }
    DenseMatrix::from_columns(out_dim, &columns)
}

/// Whether `X·Y = 0` forces `Y = 0`.
pub fn is_column_independent<S: Field>(alg: &GradedAlgebra<S>, x: &BlockMatrix<S>) -> bool {
    (0..alg.rank()).all(|j| left_mult_operator(alg, x, j).nullspace().is_empty())
}

/// Whether `Y·X = 0` forces `Y = 0`.
pub fn is_row_independent<S: Field>(alg: &GradedAlgebra<S>, x: &BlockMatrix<S>) -> bool {
    is_column_independent(&alg.opposite(), &x.transpose())
}

/// Two-sided inverse of a square-typed matrix, if it exists.
pub fn inverse<S: Field>(alg: &GradedAlgebra<S>, x: &BlockMatrix<S>) -> Result<BlockMatrix<S>> {
    if !x.is_square_type() {
        return Err(Error::TypeMismatch(format!("inverse of non-square type ({}),({})", x.row_type, x.col_type)));
    }
    let t = x.row_type.clone();
    let mut out = BlockMatrix::zero(t.clone(), t.clone());
    let mut inverses: Vec<Option<DenseMatrix<S>>> = vec![None; alg.rank()];
    for (c, &j) in x.col_grades.iter().enumerate() {
        if inverses[j].is_none() {
            let op = left_mult_operator(alg, x, j);
            inverses[j] = Some(op.inverse().map_err(|e| Error::NotInvertible(format!("grade {}: {e}", j + 1)))?);
        }
        let mut unit = vec![AlgElement::zero(); x.col_grades.len()];
        unit[c] = AlgElement::basis(alg.idempotent(j));
        let v = column_to_coords(alg, &x.col_grades, &unit, j);
        let sol = inverses[j].as_ref().unwrap().mul_vec(&v);
        for (r, e) in coords_to_column(alg, &x.row_grades, &sol, j).into_iter().enumerate() {
            out.grid.set(r, c, e);
        }
    }
    if t.is_zero() {
        return Ok(out);
    }
    let id = BlockMatrix::identity(alg, &t);
    if x.compose(alg, &out)? != id || out.compose(alg, x)? != id {
        return Err(Error::NotInvertible("one-sided inverse only".into()));
    }
    Ok(out)
}

pub fn is_invertible<S: Field>(alg: &GradedAlgebra<S>, x: &BlockMatrix<S>) -> bool {
    inverse(alg, x).is_ok()
}

/// Right universal annihilator: `Y` of type `(s, t)` with `XY = 0` through
/// which every `Z` with `XZ = 0` factors uniquely.
pub fn right_universal_annihilator<S: Field>(alg: &GradedAlgebra<S>, rad: &Radical<S>, x: &BlockMatrix<S>) -> Result<BlockMatrix<S>> {
    let n = alg.rank();
    let s = x.col_type.clone();
    let sg = &x.col_grades;
    let kernels: Vec<Vec<Vec<S>>> = (0..n).map(|j| left_mult_operator(alg, x, j).nullspace()).collect();
    let mut t = vec![0usize; n];
    let mut columns: Vec<(usize, Vec<AlgElement<S>>)> = Vec::new();
    for j in 0..n {
        let dim = column_dim(alg, sg, j);
        // K·rad(A) in grade j
        let mut kj_rad = Vec::new();
        for (jp, kernel) in kernels.iter().enumerate() {
            let rads: Vec<AlgElement<S>> = rad.part(jp, j).iter().map(|v| alg.from_coords(jp, j, v)).collect();
            for k in kernel {
                let col = coords_to_column(alg, sg, k, jp);
                for a in &rads {
                    let prod: Vec<AlgElement<S>> = col.iter().map(|e| alg.mul(e, a)).collect();
                    kj_rad.push(column_to_coords(alg, sg, &prod, j));
                }
            }
        }
        for idx in extend_independent(dim, &kj_rad, &kernels[j]) {
            t[j] += 1;
            columns.push((j, coords_to_column(alg, sg, &kernels[j][idx], j)));
        }
    }
    let t = Obj(t);
    let mut y = BlockMatrix::zero(s.clone(), t.clone());
    for (c, (_, col)) in columns.into_iter().enumerate() {
        for (r, e) in col.into_iter().enumerate() {
            y.grid.set(r, c, e);
        }
    }
    for j in 0..n {
        let kdim = kernels[j].len();
        let free_dim = column_dim(alg, &y.col_grades, j);
        let op = left_mult_operator(alg, &y, j);
        if kdim != free_dim || op.rank() != free_dim {
            return Err(Error::NotProjectiveKernel(format!(
                "grade {}: kernel has dimension {kdim}, generators span a free part of dimension {free_dim}",
                j + 1
            )));
        }
    }
    Ok(y)
}

/// Left universal annihilator: `Y` of type `(t, m)` with `YX = 0`,
/// universal among such.
pub fn left_universal_annihilator<S: Field>(alg: &GradedAlgebra<S>, rad: &Radical<S>, x: &BlockMatrix<S>) -> Result<BlockMatrix<S>> {
    let op = alg.opposite();
    Ok(right_universal_annihilator(&op, &rad.opposite(), &x.transpose())?.transpose())
}

/// `X = X1·X2` with `X1` column-independent (the image of `X`) and `X2`
/// row-independent. `X1` is the kernel of the cokernel of `X`.
pub fn epi_mono_factor<S: Field>(alg: &GradedAlgebra<S>, rad: &Radical<S>, x: &BlockMatrix<S>) -> Result<(BlockMatrix<S>, BlockMatrix<S>)> {
    let coker = left_universal_annihilator(alg, rad, x)?;
    let x1 = right_universal_annihilator(alg, rad, &coker)?;
    let t = x1.col_type.clone();
    let mut x2 = BlockMatrix::zero(t.clone(), x.col_type.clone());
    let mut ops: Vec<Option<DenseMatrix<S>>> = vec![None; alg.rank()];
    for (c, &j) in x.col_grades.iter().enumerate() {
        let op = ops[j].get_or_insert_with(|| left_mult_operator(alg, &x1, j));
        let col: Vec<AlgElement<S>> = (0..x.row_grades.len()).map(|r| x.get(r, c).clone()).collect();
        let target = column_to_coords(alg, &x.row_grades, &col, j);
        let z =
            op.solve(&target).ok_or_else(|| Error::NotProjectiveImage(format!("column {} does not factor through the image", c + 1)))?;
        for (r, e) in coords_to_column(alg, &x1.col_grades, &z, j).into_iter().enumerate() {
            x2.grid.set(r, c, e);
        }
    }
    Ok((x1, x2))
}
