//! Dense complex matrices, row-major.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::vector::ComplexVector;
use crate::C64;

/// Dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Invalid("matrix must be nonempty".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("ragged rows".into()));
        }
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            data.extend_from_slice(r);
        }
        let m = Self {
            rows: rows.len(),
            cols,
            data,
        };
        if m.data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Invalid("matrix entries must be finite".into()));
        }
        Ok(m)
    }

    pub fn from_fn<F: FnMut(usize, usize) -> C64>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diag(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<C64>]) -> Result<Self> {
        if cols.is_empty() {
            return Err(Error::Invalid("need at least one column".into()));
        }
        let rows = cols[0].len();
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::Invalid("ragged columns".into()));
        }
        Ok(Self::from_fn(rows, cols.len(), |i, j| cols[j][i]))
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, x.len(), "dimension mismatch");
        let mut out = vec![C64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self[(i, j)] * x[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn apply(&self, x: &ComplexVector) -> Result<ComplexVector> {
        if x.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.dim(),
            });
        }
        ComplexVector::new(self.matvec(x.entries()))
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a + b)
            .collect();
        CMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a - b)
            .collect();
        CMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, factor: C64) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Hermitian part `(A + A*)/2`.
    pub fn hermitian_part(&self) -> CMat {
        self.add(&self.adjoint()).scale(C64::new(0.5, 0.0))
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).fold(0.0, |a, b| a + b))
            .fold(0.0, f64::max)
    }

    pub fn norm_fro(&self) -> f64 {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(0.0, |a, b| a + b)
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Extracts the sub-block with rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> CMat {
        CMat::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }
}

impl core::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}
