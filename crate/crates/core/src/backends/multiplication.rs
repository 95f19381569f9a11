//! Multiplication (unitary) group induced by a discrete spectral measure:
//! `(T(t)f)_j = e^{i t r_j} f_j` on the μ-weighted sequence space.
//!
//! The weak orbit of the pair `(𝟙, 𝟙)` is exactly `Fμ(t)`, which ties every
//! spectral-measure diagnostic to an orbit diagnostic. States are indexed by
//! the atoms of μ and paired with the μ-weighted inner product
//! `⟨f, g⟩_μ = Σ w_j f_j conj(g_j)`.

use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::{Signal, TimeGrid};
use crate::measures::{fourier_transform, DiscreteMeasure, MeasureStructure};
use crate::semigroup::{Capabilities, SemigroupEvaluator};
use crate::vector::ComplexVector;
use crate::C64;

#[derive(Debug, Clone)]
pub struct MultiplicationSemigroup {
    measure: DiscreteMeasure,
}

impl MultiplicationSemigroup {
    pub fn new(measure: DiscreteMeasure) -> Result<Self> {
        if measure.is_empty() {
            return Err(Error::Invalid("measure has no atoms".into()));
        }
        Ok(Self { measure })
    }

    pub fn measure(&self) -> &DiscreteMeasure {
        &self.measure
    }

    fn check_dim(&self, x: &ComplexVector) -> Result<()> {
        if x.dim() != self.measure.len() {
            return Err(Error::DimensionMismatch {
                expected: self.measure.len(),
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// μ-weighted norm of a state.
    pub fn norm_mu(&self, x: &ComplexVector) -> Result<f64> {
        self.state_norm(x)
    }

    /// True when the orbit of `(x, y)` is a scalar multiple of `Fμ`, i.e.
    /// `x_j conj(y_j)` is constant across atoms. Then the orbit can be
    /// evaluated through the measure's closed-form transform.
    fn constant_profile(&self, x: &ComplexVector, y: &ComplexVector) -> Option<C64> {
        let first = x.entries()[0] * y.entries()[0].conj();
        let tol = 0.0;
        for (a, b) in x.entries().iter().zip(y.entries()) {
            let p = a * b.conj();
            if (p - first).norm() > tol {
                return None;
            }
        }
        Some(first)
    }

    /// Whether the `(x, y)` orbit rides the measure's structured fast path
    /// (constant profile over a structured atom family); orbit-heavy
    /// functionals on very large measures are only cheap in that case.
    pub fn has_fast_orbit(&self, x: &ComplexVector, y: &ComplexVector) -> bool {
        !matches!(self.measure.structure(), MeasureStructure::Generic)
            && x.dim() == self.measure.len()
            && y.dim() == self.measure.len()
            && self.constant_profile(x, y).is_some()
    }
}

impl SemigroupEvaluator for MultiplicationSemigroup {
    fn dim(&self) -> usize {
        self.measure.len()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            has_resolvent_closed_form: true,
            is_contractive_claimed: true,
            adjoint_available: true,
            group_available: true,
            law_tolerance: 1e-12,
        }
    }

    /// Entrywise phase rotation; defined for all real `t` (unitary group).
    fn apply(&self, t: f64, x: &ComplexVector) -> Result<ComplexVector> {
        self.check_dim(x)?;
        if !t.is_finite() {
            return Err(Error::Invalid("time must be finite".into()));
        }
        let values: Vec<C64> = self
            .measure
            .atoms()
            .iter()
            .zip(x.entries())
            .map(|(atom, &f)| C64::from_polar(1.0, t * atom.location) * f)
            .collect();
        ComplexVector::new(values)
    }

    fn pair(&self, x: &ComplexVector, y: &ComplexVector) -> Result<C64> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let mut acc = C64::new(0.0, 0.0);
        for ((atom, &f), &g) in self.measure.atoms().iter().zip(x.entries()).zip(y.entries()) {
            acc += f * g.conj() * atom.weight;
        }
        Ok(acc)
    }

    fn weak_orbit(&self, x: &ComplexVector, y: &ComplexVector, grid: &TimeGrid) -> Result<Signal> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        // Σ w_j x_j conj(y_j) e^{i t r_j} per grid point
        if let Some(profile) = self.constant_profile(x, y) {
            if !matches!(self.measure.structure(), MeasureStructure::Generic) {
                return Signal::sample(grid.clone(), |t| {
                    fourier_transform(&self.measure, t) * profile
                });
            }
        }
        let coeff: Vec<(f64, C64)> = self
            .measure
            .atoms()
            .iter()
            .zip(x.entries().iter().zip(y.entries()))
            .map(|(atom, (&f, &g))| (atom.location, f * g.conj() * atom.weight))
            .collect();
        Signal::sample(grid.clone(), |t| {
            let mut acc = C64::new(0.0, 0.0);
            for &(r, c) in &coeff {
                acc += C64::from_polar(1.0, t * r) * c;
            }
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::fourier_transform_direct;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn time_zero_is_identity() {
        let mu = DiscreteMeasure::from_atoms(&[(0.7, 0.5), (-1.2, 0.5)]).unwrap();
        let sg = MultiplicationSemigroup::new(mu).unwrap();
        let x = ComplexVector::new(alloc::vec![c(1.0, -0.5), c(0.2, 0.9)]).unwrap();
        assert_eq!(sg.apply(0.0, &x).unwrap(), x);
    }

    #[test]
    fn atom_at_origin_is_fixed_point() {
        let mu = DiscreteMeasure::dirac(0.0);
        let sg = MultiplicationSemigroup::new(mu).unwrap();
        let x = ComplexVector::ones(1);
        for t in [0.5, 10.0, 999.0] {
            assert_eq!(sg.apply(t, &x).unwrap(), x);
        }
    }

    #[test]
    fn symmetric_two_atom_orbit_is_cosine() {
        let mu = DiscreteMeasure::from_atoms(&[(1.0, 0.5), (-1.0, 0.5)]).unwrap();
        let sg = MultiplicationSemigroup::new(mu).unwrap();
        let ones = ComplexVector::ones(2);
        for t in [0.0f64, 0.3, 2.0, 7.5] {
            let evolved = sg.apply(t, &ones).unwrap();
            let v = sg.pair(&evolved, &ones).unwrap();
            assert!((v - c(t.cos(), 0.0)).norm() < 1e-14, "t={t}");
        }
    }

    #[test]
    fn isometry_of_the_weighted_norm_is_exact() {
        let mu = DiscreteMeasure::from_atoms(&[(0.3, 0.2), (2.0, 0.5), (-4.0, 0.3)]).unwrap();
        let sg = MultiplicationSemigroup::new(mu).unwrap();
        let mut rng = crate::rng::SplitMix64::new(5);
        for _ in 0..10 {
            let x = ComplexVector::new((0..3).map(|_| rng.normal_c64()).collect()).unwrap();
            let before = sg.norm_mu(&x).unwrap();
            let after = sg.norm_mu(&sg.apply(13.7, &x).unwrap()).unwrap();
            assert!((before - after).abs() < 1e-13 * before.max(1.0));
        }
    }

    #[test]
    fn weak_orbit_of_ones_equals_fourier_transform() {
        let mu = DiscreteMeasure::cantor(8).unwrap();
        let n = mu.len();
        let sg = MultiplicationSemigroup::new(mu.clone()).unwrap();
        let ones = ComplexVector::ones(n);
        let grid = TimeGrid::new(0.0, 0.37, 40).unwrap();
        let orbit = sg.weak_orbit(&ones, &ones, &grid).unwrap();
        for (k, t) in grid.points().enumerate() {
            let f = fourier_transform_direct(&mu, t);
            assert!((orbit.values()[k] - f).norm() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn generic_pair_orbit_matches_pointwise_evaluation() {
        let mu = DiscreteMeasure::from_atoms(&[(0.5, 0.25), (1.5, 0.25), (-0.7, 0.5)]).unwrap();
        let sg = MultiplicationSemigroup::new(mu).unwrap();
        let x = ComplexVector::new(alloc::vec![c(1.0, 0.2), c(-0.4, 0.0), c(0.0, 1.0)]).unwrap();
        let y = ComplexVector::new(alloc::vec![c(0.3, 0.0), c(1.0, -1.0), c(0.5, 0.5)]).unwrap();
        let grid = TimeGrid::new(0.0, 0.21, 30).unwrap();
        let orbit = sg.weak_orbit(&x, &y, &grid).unwrap();
        for (k, t) in grid.points().enumerate() {
            let direct = sg.pair(&sg.apply(t, &x).unwrap(), &y).unwrap();
            assert!((orbit.values()[k] - direct).norm() < 1e-13);
        }
    }
}
