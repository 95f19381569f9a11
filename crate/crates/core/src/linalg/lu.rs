//! LU factorization with partial pivoting for complex systems.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::C64;

use super::dense::CMat;

/// Factored form of a square matrix, reusable across right-hand sides.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: CMat,
    perm: Vec<usize>,
    min_pivot: f64,
    max_pivot: f64,
}

impl Lu {
    /// Factors `a` with partial pivoting; fails on (numerically) singular
    /// input relative to the matrix scale.
    pub fn factor(a: &CMat) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Invalid("LU requires a square matrix".into()));
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        let mut min_pivot = f64::INFINITY;
        let mut max_pivot = 0.0f64;

        for col in 0..n {
            let mut best = col;
            let mut best_val = lu[(col, col)].norm();
            for row in col + 1..n {
                let v = lu[(row, col)].norm();
                if v > best_val {
                    best_val = v;
                    best = row;
                }
            }
            if best != col {
                for j in 0..n {
                    let tmp = lu[(col, j)];
                    lu[(col, j)] = lu[(best, j)];
                    lu[(best, j)] = tmp;
                }
                perm.swap(col, best);
            }
            let pivot = lu[(col, col)];
            let pnorm = pivot.norm();
            if pnorm <= scale * 1e-14 * n as f64 {
                return Err(Error::Singular("LU pivot below tolerance".into()));
            }
            min_pivot = min_pivot.min(pnorm);
            max_pivot = max_pivot.max(pnorm);
            for row in col + 1..n {
                let factor = lu[(row, col)] / pivot;
                lu[(row, col)] = factor;
                for j in col + 1..n {
                    let v = lu[(col, j)];
                    lu[(row, j)] -= factor * v;
                }
            }
        }
        Ok(Self {
            lu,
            perm,
            min_pivot,
            max_pivot,
        })
    }

    pub fn dim(&self) -> usize {
        self.lu.rows()
    }

    /// Crude conditioning indicator from the pivot spread.
    pub fn pivot_ratio(&self) -> f64 {
        self.max_pivot / self.min_pivot
    }

    pub fn solve(&self, b: &[C64]) -> Result<Vec<C64>> {
        let n = self.dim();
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        // forward: L y = P b
        for i in 1..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc;
        }
        // backward: U x = y
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc / self.lu[(i, i)];
        }
        Ok(x)
    }

    pub fn solve_mat(&self, b: &CMat) -> Result<CMat> {
        let n = self.dim();
        if b.rows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.rows(),
            });
        }
        let mut out = CMat::zeros(n, b.cols());
        let mut col = vec![C64::new(0.0, 0.0); n];
        for j in 0..b.cols() {
            for i in 0..n {
                col[i] = b[(i, j)];
            }
            let x = self.solve(&col)?;
            for i in 0..n {
                out[(i, j)] = x[i];
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<CMat> {
        self.solve_mat(&CMat::identity(self.dim()))
    }

    /// One-norm condition number `‖A‖₁ ‖A⁻¹‖₁` (explicit inverse; matrices
    /// here are small).
    pub fn condition_one(&self, a: &CMat) -> Result<f64> {
        Ok(a.norm_one() * self.inverse()?.norm_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn solves_small_complex_system() {
        let a = CMat::from_rows(&[
            vec![c(2.0, 1.0), c(0.0, -1.0), c(0.5, 0.0)],
            vec![c(1.0, 0.0), c(3.0, 0.0), c(-1.0, 2.0)],
            vec![c(0.0, 0.5), c(1.0, 1.0), c(4.0, -1.0)],
        ])
        .unwrap();
        let x_true = vec![c(1.0, -2.0), c(0.5, 0.5), c(-1.5, 1.0)];
        let b = a.matvec(&x_true);
        let lu = Lu::factor(&a).unwrap();
        let x = lu.solve(&b).unwrap();
        for (got, want) in x.iter().zip(&x_true) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = CMat::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 1.0)],
            vec![c(-1.0, 0.5), c(0.5, 0.0)],
        ])
        .unwrap();
        let inv = Lu::factor(&a).unwrap().inverse().unwrap();
        let prod = a.mul(&inv);
        assert!(prod.sub(&CMat::identity(2)).max_abs() < 1e-13);
    }

    #[test]
    fn rejects_singular() {
        let a = CMat::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(4.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(Lu::factor(&a), Err(Error::Singular(_))));
    }
}
