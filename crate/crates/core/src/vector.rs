//! Complex state vectors and the dual pairing.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::C64;

/// A finite complex vector: state `x` or observation functional `y`.
///
/// Entries must be finite; construction rejects NaN/Inf.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<C64>,
}

impl ComplexVector {
    /// Builds a vector, rejecting empty input and non-finite entries.
    pub fn new(entries: Vec<C64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Invalid("vector must be nonempty".into()));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Invalid("vector entries must be finite".into()));
        }
        Ok(Self { entries })
    }

    /// Builds a real vector.
    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| C64::new(v, 0.0)).collect())
    }

    /// The all-ones vector of dimension `n` (the function `1` on an atom set).
    pub fn ones(n: usize) -> Self {
        Self {
            entries: vec![C64::new(1.0, 0.0); n],
        }
    }

    /// Standard basis vector `e_k`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut entries = vec![C64::new(0.0, 0.0); n];
        entries[k] = C64::new(1.0, 0.0);
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [C64] {
        &mut self.entries
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .fold(0.0, |a, b| a + b)
            .sqrt()
    }

    /// Scales the vector by a complex factor.
    pub fn scaled(&self, factor: C64) -> Self {
        Self {
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    /// Entrywise sum; dimensions must match.
    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self, other)?;
        Ok(Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    /// Entrywise difference; dimensions must match.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self, other)?;
        Ok(Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }
}

fn check_dim(x: &ComplexVector, y: &ComplexVector) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    Ok(())
}

/// Dual pairing `⟨x, y⟩ = Σ x_j · conj(y_j)`.
///
/// The second slot is conjugated (Hilbert-space convention); this convention
/// is fixed once here and used by every orbit and resolvent functional.
/// Conjugate symmetry holds: `pairing(x, y) = conj(pairing(y, x))`.
pub fn pairing(x: &ComplexVector, y: &ComplexVector) -> Result<C64> {
    check_dim(x, y)?;
    Ok(x.entries
        .iter()
        .zip(&y.entries)
        .map(|(&a, &b)| a * b.conj())
        .fold(C64::new(0.0, 0.0), |acc, z| acc + z))
}
