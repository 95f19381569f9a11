//! Cayley-transform cogenerator of a matrix semigroup.
//!
//! `G = −(I + A)(I − A)^{−1} = I − 2(I − A)^{−1}` packages the semigroup's
//! asymptotics into a single operator: `λ ↦ −(1+λ)/(1−λ)` maps the imaginary
//! axis onto the unit circle, `G` is a contraction whenever the semigroup
//! is, and `lim_t ‖e^{tA}x‖ = lim_n ‖Gⁿx‖` — so strong stability transfers
//! both ways between the semigroup and the powers of `G`.

use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{op_norm_2, schur, CMat, Lu};
use crate::vector::ComplexVector;
use crate::C64;

use super::matrix::MatrixGenerator;

/// The cogenerator matrix with its operator norm attached.
#[derive(Debug, Clone)]
pub struct Cogenerator {
    g: CMat,
    norm_2: f64,
}

impl Cogenerator {
    pub fn matrix(&self) -> &CMat {
        &self.g
    }

    /// Operator 2-norm of `G`; at most `1 + tol` for contractive sources.
    pub fn norm(&self) -> f64 {
        self.norm_2
    }

    pub fn eigenvalues(&self) -> Result<Vec<C64>> {
        Ok(schur(&self.g)?.eigenvalues())
    }

    /// `Gⁿ x` by repeated application.
    pub fn power_apply(&self, n: usize, x: &ComplexVector) -> Result<ComplexVector> {
        let mut state = x.clone();
        for _ in 0..n {
            state = self.g.apply(&state)?;
        }
        Ok(state)
    }

    /// `‖Gⁿx‖` for `n = 0..=n_max`.
    pub fn power_norms(&self, x: &ComplexVector, n_max: usize) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(n_max + 1);
        let mut state = x.clone();
        out.push(state.norm());
        for _ in 0..n_max {
            state = self.g.apply(&state)?;
            out.push(state.norm());
        }
        Ok(out)
    }
}

/// Eigenvalue image under the Cayley map `λ ↦ −(1+λ)/(1−λ)`.
pub fn cayley_image(lambda: C64) -> C64 {
    -(C64::new(1.0, 0.0) + lambda) / (C64::new(1.0, 0.0) - lambda)
}

/// Builds the cogenerator `I − 2(I − A)^{−1}`; fails when `1 ∈ σ(A)` makes
/// `I − A` (numerically) singular.
pub fn cogenerator_of(gen: &MatrixGenerator) -> Result<Cogenerator> {
    let n = gen.dim();
    let eye = CMat::identity(n);
    let shifted = eye.sub(gen.matrix());
    let lu = Lu::factor(&shifted).map_err(|_| {
        Error::Singular("I − A is numerically singular (1 ∈ σ(A))".into())
    })?;
    let inv = lu.inverse()?;
    let g = eye.sub(&inv.scale(C64::new(2.0, 0.0)));
    let norm_2 = op_norm_2(&g)?;
    Ok(Cogenerator { g, norm_2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use crate::synth;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn gen_diag(diag: &[C64]) -> MatrixGenerator {
        MatrixGenerator::new(CMat::diag(diag)).unwrap()
    }

    #[test]
    fn scalar_stable_generator_maps_to_zero() {
        let g = cogenerator_of(&gen_diag(&[c(-1.0, 0.0)])).unwrap();
        assert!(g.matrix()[(0, 0)].norm() < 1e-14);
    }

    #[test]
    fn scalar_imaginary_generator_maps_to_unit_circle() {
        let g = cogenerator_of(&gen_diag(&[c(0.0, 1.0)])).unwrap();
        assert!((g.matrix()[(0, 0)] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((g.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn blockwise_diagonal_case() {
        let g = cogenerator_of(&gen_diag(&[c(0.0, 1.0), c(-1.0, 0.0)])).unwrap();
        assert!((g.matrix()[(0, 0)] - c(0.0, -1.0)).norm() < 1e-14);
        assert!(g.matrix()[(1, 1)].norm() < 1e-14);
        assert!(g.matrix()[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn rejects_one_in_spectrum() {
        assert!(cogenerator_of(&gen_diag(&[c(1.0, 0.0)])).is_err());
    }

    #[test]
    fn spectral_mapping_on_random_contractions() {
        let mut rng = SplitMix64::new(3);
        for _ in 0..5 {
            let a = synth::random_contractive_generator(&mut rng, 5, 2);
            let gen = MatrixGenerator::new(a).unwrap();
            let eig_a = gen.eigenvalues().unwrap();
            let g = cogenerator_of(&gen).unwrap();
            let eig_g = g.eigenvalues().unwrap();
            // every Cayley image of an eigenvalue of A appears in σ(G)
            for la in &eig_a {
                let want = cayley_image(*la);
                let best = eig_g
                    .iter()
                    .map(|z| (z - want).norm())
                    .fold(f64::INFINITY, f64::min);
                assert!(best < 1e-8, "missing image {want}");
                // imaginary axis ⟷ unit circle
                assert_eq!(la.re.abs() < 1e-8, (want.norm() - 1.0).abs() < 1e-8);
            }
            assert!(g.norm() <= 1.0 + 1e-9, "cogenerator norm {}", g.norm());
        }
    }
}
