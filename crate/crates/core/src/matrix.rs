//! Dense row-major matrices over real or complex scalars.

use crate::{Complex64, Error, Result};
use std::ops::{Add, Mul, Neg, Sub};

/// The scalar operations the recovery and eigenvalue kernels need, so the
/// same code paths serve `f64` systems and `Complex64` systems.
pub trait Scalar:
    Copy
    + PartialEq
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const ZERO: Self;
    const ONE: Self;

    fn conj(self) -> Self;
    /// Squared modulus.
    fn abs_sq(self) -> f64;
    /// Multiply by a real scalar.
    fn scale(self, s: f64) -> Self;
    /// Exact scalar division.
    fn div(self, rhs: Self) -> Self;
    fn from_real(r: f64) -> Self;

    fn abs(self) -> f64 {
        self.abs_sq().sqrt()
    }
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;

    fn conj(self) -> Self {
        self
    }

    fn abs_sq(self) -> f64 {
        self * self
    }

    fn scale(self, s: f64) -> Self {
        self * s
    }

    fn div(self, rhs: Self) -> Self {
        self / rhs
    }

    fn from_real(r: f64) -> Self {
        r
    }
}

impl Scalar for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    const ONE: Self = Complex64::new(1.0, 0.0);

    fn conj(self) -> Self {
        Complex64::new(self.re, -self.im)
    }

    fn abs_sq(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    fn scale(self, s: f64) -> Self {
        Complex64::new(self.re * s, self.im * s)
    }

    fn div(self, rhs: Self) -> Self {
        self / rhs
    }

    fn from_real(r: f64) -> Self {
        Complex64::new(r, 0.0)
    }
}

/// Whether columns are as constructed or scaled to unit l2 norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormState {
    Raw,
    UnitColumns,
}

/// Dense matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    norm_state: NormState,
}

pub type ComplexMatrix = Mat<Complex64>;
pub type RealMatrix = Mat<f64>;

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::ZERO; rows * cols],
            norm_state: NormState::Raw,
        }
    }

    /// Builds from a closure over (row, col), in raw state.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat {
            rows,
            cols,
            data,
            norm_state: NormState::Raw,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::ONE);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn norm_state(&self) -> NormState {
        self.norm_state
    }

    /// Marks the matrix as having unit columns. Callers are responsible for
    /// the columns actually being normalized; [`Mat::column_normalize`] is
    /// the checked path.
    pub fn assume_unit_columns(mut self) -> Self {
        self.norm_state = NormState::UnitColumns;
        self
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn col_iter(&self, c: usize) -> impl Iterator<Item = T> + '_ {
        (0..self.rows).map(move |r| self.get(r, c))
    }

    pub fn col_to_vec(&self, c: usize) -> Vec<T> {
        self.col_iter(c).collect()
    }

    pub fn col_norm(&self, c: usize) -> f64 {
        self.col_iter(c).map(|v| v.abs_sq()).sum::<f64>().sqrt()
    }

    /// `sum_m conj(A[m,i]) * A[m,j]`, the (i, j) entry of the Gram matrix.
    pub fn col_dotc(&self, i: usize, j: usize) -> T {
        let mut acc = T::ZERO;
        for r in 0..self.rows {
            acc = acc + self.get(r, i).conj() * self.get(r, j);
        }
        acc
    }

    /// Scales every column to unit l2 norm. Errors on an exactly zero column.
    pub fn column_normalize(&self) -> Result<Self> {
        let mut out = self.clone();
        for c in 0..self.cols {
            let norm = self.col_norm(c);
            if norm == 0.0 {
                return Err(Error::ZeroColumn(c));
            }
            let inv = 1.0 / norm;
            for r in 0..self.rows {
                out.set(r, c, self.get(r, c).scale(inv));
            }
        }
        out.norm_state = NormState::UnitColumns;
        Ok(out)
    }

    /// The submatrix formed by the listed columns, in the listed order.
    pub fn select_columns(&self, support: &[usize]) -> Self {
        let mut out = Mat::zeros(self.rows, support.len());
        for (sc, &c) in support.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, sc, self.get(r, c));
            }
        }
        out.norm_state = self.norm_state;
        out
    }

    /// `A * x` for a dense vector.
    pub fn mat_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has {} entries",
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = T::ZERO;
                for c in 0..self.cols {
                    acc = acc + self.get(r, c) * x[c];
                }
                acc
            })
            .collect())
    }
}

/// `sum_i conj(a[i]) * b[i]`.
pub fn dotc<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = T::ZERO;
    for (&x, &y) in a.iter().zip(b) {
        acc = acc + x.conj() * y;
    }
    acc
}

/// Euclidean norm.
pub fn norm2<T: Scalar>(v: &[T]) -> f64 {
    v.iter().map(|x| x.abs_sq()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_unit_columns() {
        let m = Mat::from_fn(3, 2, |r, c| (r as f64 + 1.0) * (c as f64 + 1.0));
        let n = m.column_normalize().unwrap();
        assert_eq!(n.norm_state(), NormState::UnitColumns);
        for c in 0..2 {
            assert!((n.col_norm(c) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn normalize_identity_unchanged() {
        let id: RealMatrix = Mat::identity(2);
        let n = id.column_normalize().unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(n.get(r, c), id.get(r, c));
            }
        }
    }

    #[test]
    fn normalize_rejects_zero_column() {
        let mut m: RealMatrix = Mat::zeros(2, 2);
        m.set(0, 0, 1.0);
        assert_eq!(m.column_normalize(), Err(Error::ZeroColumn(1)));
    }

    #[test]
    fn dotc_conjugates_first_argument() {
        let a = [Complex64::new(0.0, 1.0)];
        let b = [Complex64::new(0.0, 1.0)];
        assert_eq!(dotc(&a, &b), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn mat_vec_shape_check() {
        let m: RealMatrix = Mat::identity(3);
        assert!(m.mat_vec(&[1.0, 2.0]).is_err());
        assert_eq!(m.mat_vec(&[1.0, 2.0, 3.0]).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn select_columns_keeps_order() {
        let m = Mat::from_fn(2, 4, |r, c| (10 * r + c) as f64);
        let s = m.select_columns(&[3, 1]);
        assert_eq!(s.get(0, 0), 3.0);
        assert_eq!(s.get(0, 1), 1.0);
        assert_eq!(s.get(1, 0), 13.0);
    }
}
