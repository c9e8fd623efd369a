//! Dense exact linear algebra over a [`Scalar`] field.
//!
//! Elimination always picks the first nonzero entry in row order as pivot, so
//! every result here (kernels, solutions, complements) is reproducible.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("subspace is not contained in the ambient space")]
    NotContained,
    #[error("vector does not lie in the subspace")]
    NotInSubspace,
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Result<Self, LinalgError> {
        for c in columns {
            if c.len() != rows {
                return Err(LinalgError::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| {
            columns[c][r].clone()
        }))
    }

    /// Reshape a row-major flat vector.
    pub fn from_flat(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn flat(&self) -> &[T] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<T> {
        self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| {
            self[(rows[r], cols[c])].clone()
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] = out[(r, c)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, lead);
            let inv = T::one() / m[(lead, col)].clone();
            for c in col..m.cols {
                let v = m[(lead, c)].clone() * inv.clone();
                m[(lead, c)] = v;
            }
            for r in 0..m.rows {
                if r == lead || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let sub = factor.clone() * m[(lead, c)].clone();
                    if !sub.is_zero() {
                        m[(r, c)] = m[(r, c)].clone() - sub;
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Two-sided inverse, or `None` when singular or not square.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                T::one()
            } else {
                T::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| red[(r, c + n)].clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Entries rendered with `Display`, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_mul(rhs)
            .expect("matrix product dimension mismatch")
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix difference shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn axpy<T: Scalar>(acc: &mut [T], s: &T, x: &[T]) {
    if s.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a = a.clone() + s.clone() * b.clone();
        }
    }
}

pub fn is_zero_vec<T: Scalar>(v: &[T]) -> bool {
    v.iter().all(T::is_zero)
}

/// A solution of `a * x = b`, or `None` when the system is inconsistent.
///
/// Free variables of the reduced system are set to zero.
pub fn solve<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<Option<Vec<T>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let n = a.cols();
    let aug = Matrix::from_fn(a.rows(), n + 1, |r, c| {
        if c < n {
            a[(r, c)].clone()
        } else {
            b[r].clone()
        }
    });
    let (red, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![T::zero(); n];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = red[(row, n)].clone();
    }
    Ok(Some(x))
}

/// Basis of the null space, one vector per free column in increasing order.
pub fn kernel_basis<T: Scalar>(a: &Matrix<T>) -> Subspace<T> {
    let n = a.cols();
    let (red, pivots) = a.rref();
    let mut basis = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    let mut free = Vec::new();
    for c in 0..n {
        if pivot_iter.peek() == Some(&&c) {
            pivot_iter.next();
        } else {
            free.push(c);
        }
    }
    for &f in &free {
        let mut v = vec![T::zero(); n];
        v[f] = T::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -red[(row, f)].clone();
        }
        basis.push(v);
    }
    Subspace {
        ambient_dim: n,
        basis,
    }
}

/// A linear subspace of `T^ambient_dim` given by an independent basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<T> {
    ambient_dim: usize,
    basis: Vec<Vec<T>>,
}

impl<T: Scalar> Subspace<T> {
    /// Requires the vectors to be independent.
    pub fn new(ambient_dim: usize, basis: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        check_lengths(ambient_dim, &basis)?;
        let s = Self { ambient_dim, basis };
        if s.stacked().rank() != s.basis.len() {
            return Err(LinalgError::Dependent);
        }
        Ok(s)
    }

    /// Span of arbitrary vectors; keeps the first independent ones in order.
    pub fn span(
        ambient_dim: usize,
        vectors: impl IntoIterator<Item = Vec<T>>,
    ) -> Result<Self, LinalgError> {
        let mut basis: Vec<Vec<T>> = Vec::new();
        // Reduced copies of the accepted vectors, used for independence tests.
        let mut echelon: Vec<(usize, Vec<T>)> = Vec::new();
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(LinalgError::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
            if let Some(reduced) = reduce_against(&echelon, &v) {
                let lead = reduced.iter().position(|x| !x.is_zero()).unwrap();
                insert_echelon(&mut echelon, lead, reduced);
                basis.push(v);
            }
        }
        Ok(Self { ambient_dim, basis })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![T::zero(); ambient_dim];
                v[i] = T::one();
                v
            })
            .collect();
        Self { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient_dim x dim` matrix.
    pub fn stacked(&self) -> Matrix<T> {
        Matrix::from_fn(self.ambient_dim, self.basis.len(), |r, c| {
            self.basis[c][r].clone()
        })
    }

    /// Coordinates of `v` in this basis, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[T]) -> Result<Option<Vec<T>>, LinalgError> {
        if v.len() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        solve(&self.stacked(), v)
    }

    pub fn contains(&self, v: &[T]) -> Result<bool, LinalgError> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// The vector with the given coordinates.
    pub fn combine(&self, coords: &[T]) -> Vec<T> {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let mut out = vec![T::zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(&mut out, c, b);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: other.ambient_dim,
                found: self.ambient_dim,
            });
        }
        let joint = Self::span(
            self.ambient_dim,
            other.basis.iter().chain(&self.basis).cloned(),
        )?;
        Ok(joint.dim() == other.dim())
    }

    /// Image of the subspace under `map` (an `m x ambient_dim` matrix).
    pub fn image(&self, map: &Matrix<T>) -> Result<Self, LinalgError> {
        if map.cols() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: map.cols(),
            });
        }
        Self::span(map.rows(), self.basis.iter().map(|b| map.mul_vec(b)))
    }
}

/// `span(u) == span(w)`, decided by ranks of stacked matrices.
pub fn subspace_equal<T: Scalar>(u: &Subspace<T>, w: &Subspace<T>) -> Result<bool, LinalgError> {
    if u.ambient_dim != w.ambient_dim {
        return Err(LinalgError::DimensionMismatch {
            expected: u.ambient_dim,
            found: w.ambient_dim,
        });
    }
    let ru = u.stacked().rank();
    let rw = w.stacked().rank();
    if ru != rw {
        return Ok(false);
    }
    let both: Vec<Vec<T>> = u.basis.iter().chain(&w.basis).cloned().collect();
    let joint = Matrix::from_columns(u.ambient_dim, &both)?;
    Ok(joint.rank() == ru)
}

fn check_lengths<T>(ambient_dim: usize, vs: &[Vec<T>]) -> Result<(), LinalgError> {
    match vs.iter().find(|v| v.len() != ambient_dim) {
        Some(v) => Err(LinalgError::DimensionMismatch {
            expected: ambient_dim,
            found: v.len(),
        }),
        None => Ok(()),
    }
}

fn reduce_against<T: Scalar>(echelon: &[(usize, Vec<T>)], v: &[T]) -> Option<Vec<T>> {
    let mut r = v.to_vec();
    for (lead, row) in echelon {
        if !r[*lead].is_zero() {
            let f = -r[*lead].clone();
            axpy(&mut r, &f, row);
        }
    }
    if is_zero_vec(&r) {
        None
    } else {
        Some(r)
    }
}

fn insert_echelon<T: Scalar>(echelon: &mut Vec<(usize, Vec<T>)>, lead: usize, mut row: Vec<T>) {
    let inv = T::one() / row[lead].clone();
    for x in row.iter_mut() {
        *x = x.clone() * inv.clone();
    }
    // Keep previous rows reduced in the new leading column.
    for (_, other) in echelon.iter_mut() {
        if !other[lead].is_zero() {
            let f = -other[lead].clone();
            axpy(other, &f, &row);
        }
    }
    echelon.push((lead, row));
}

/// `ambient / sub` with an explicit complement basis.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientPresentation<T> {
    ambient: Subspace<T>,
    sub: Subspace<T>,
    complement: Vec<Vec<T>>,
    // Columns: sub basis followed by complement.
    solver: Subspace<T>,
}

/// Presentation of `z / b`, with the complement chosen greedily from `z`'s basis.
pub fn quotient_presentation<T: Scalar>(
    z: &Subspace<T>,
    b: &Subspace<T>,
) -> Result<QuotientPresentation<T>, LinalgError> {
    if z.ambient_dim != b.ambient_dim {
        return Err(LinalgError::DimensionMismatch {
            expected: z.ambient_dim,
            found: b.ambient_dim,
        });
    }
    if !b.is_subspace_of(z)? {
        return Err(LinalgError::NotContained);
    }
    let mut echelon = Vec::new();
    for v in &b.basis {
        if let Some(r) = reduce_against(&echelon, v) {
            let lead = r.iter().position(|x| !x.is_zero()).unwrap();
            insert_echelon(&mut echelon, lead, r);
        }
    }
    let mut complement = Vec::new();
    for v in &z.basis {
        if let Some(r) = reduce_against(&echelon, v) {
            let lead = r.iter().position(|x| !x.is_zero()).unwrap();
            insert_echelon(&mut echelon, lead, r);
            complement.push(v.clone());
        }
    }
    let solver = Subspace {
        ambient_dim: z.ambient_dim,
        basis: b.basis.iter().chain(&complement).cloned().collect(),
    };
    Ok(QuotientPresentation {
        ambient: z.clone(),
        sub: b.clone(),
        complement,
        solver,
    })
}

impl<T: Scalar> QuotientPresentation<T> {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ambient(&self) -> &Subspace<T> {
        &self.ambient
    }

    pub fn sub(&self) -> &Subspace<T> {
        &self.sub
    }

    pub fn complement(&self) -> &[Vec<T>] {
        &self.complement
    }

    /// Complement coordinates of the class of `v`; `v` must lie in the ambient space.
    pub fn class_coordinates(&self, v: &[T]) -> Result<Vec<T>, LinalgError> {
        let coords = self
            .solver
            .coordinates(v)?
            .ok_or(LinalgError::NotInSubspace)?;
        Ok(coords[self.sub.dim()..].to_vec())
    }

    /// The complement representative of a class.
    pub fn representative(&self, coords: &[T]) -> Vec<T> {
        assert_eq!(coords.len(), self.dim(), "class coordinate length mismatch");
        let mut out = vec![T::zero(); self.ambient.ambient_dim];
        for (c, b) in coords.iter().zip(&self.complement) {
            axpy(&mut out, c, b);
        }
        out
    }
}
