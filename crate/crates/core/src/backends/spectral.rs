//! Point-spectrum decompositions of matrix generators.
//!
//! `jgdl_split` realizes, in finite dimensions, the splitting of the state
//! space into the span of imaginary-axis eigenvectors (the reversible part,
//! on which the semigroup acts as a group of rotations) and the complementary
//! spectral subspace (on which 0 is an accumulation point of every orbit).
//! `mean_ergodic_projection` compares the spectral projection onto `ker A`
//! with the empirical Cesàro average `(1/T)∫₀ᵀ e^{sA} ds`; the deviation
//! decays like `1/T` once the nonzero imaginary eigenvalues are bounded away
//! from zero.

#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{expm, op_norm_2, ordered_schur_split, orthonormal_range, spectral_projector, CMat};
use crate::C64;

use super::matrix::{BoundednessCertificate, MatrixGenerator};

/// Jacobs–Glicksberg–de Leeuw style splitting for a matrix generator.
#[derive(Debug, Clone)]
pub struct JgdlSplit {
    /// Orthonormal basis of the reversible subspace (imaginary-axis
    /// eigenvectors).
    pub x_r: CMat,
    /// Orthonormal basis of the stable spectral complement.
    pub x_s: CMat,
    /// Spectral projection onto `x_r` along `x_s`; commutes with `e^{tA}`.
    pub p_r: CMat,
    /// Complementary projection `I − p_r`.
    pub p_s: CMat,
    /// Absolute threshold that classified an eigenvalue as imaginary.
    pub tol_abs: f64,
}

/// Splits the space along the imaginary-axis point spectrum.
///
/// `tol_im` is relative to `‖A‖`. Fails when an imaginary-axis eigenvalue is
/// defective (the semigroup is then unbounded and the splitting meaningless).
pub fn jgdl_split(gen: &MatrixGenerator, tol_im: f64) -> Result<JgdlSplit> {
    let cert = BoundednessCertificate::evaluate(gen, tol_im)?;
    if cert.imaginary_defective {
        return Err(Error::Invalid(
            "defective imaginary eigenvalue: semigroup unbounded, no splitting".into(),
        ));
    }
    let tol_abs = cert.tol_abs;
    let split = ordered_schur_split(gen.matrix(), |z| z.re.abs() <= tol_abs)?;
    let p_r = spectral_projector(&split)?;
    let n = gen.dim();
    let p_s = CMat::identity(n).sub(&p_r);
    let x_r = split.selected_basis();
    let x_s = if split.k == n {
        CMat::zeros(n, 0)
    } else {
        orthonormal_range(&p_s, 1e-10)?
    };
    Ok(JgdlSplit {
        x_r,
        x_s,
        p_r,
        p_s,
        tol_abs,
    })
}

/// Exact vs. empirical mean ergodic projection.
#[derive(Debug, Clone)]
pub struct MeanErgodicReport {
    /// Spectral projection onto `ker A` (zero when 0 is not an eigenvalue).
    pub p_exact: CMat,
    /// `(1/T) ∫₀ᵀ e^{sA} ds` by composite trapezoid.
    pub p_empirical: CMat,
    /// Operator 2-norm of the difference.
    pub deviation: f64,
    pub horizon: f64,
    /// Quadrature step used for the empirical average.
    pub ds: f64,
}

/// Compares the ergodic projection with the finite-horizon Cesàro average
/// of the semigroup.
pub fn mean_ergodic_projection(gen: &MatrixGenerator, horizon: f64) -> Result<MeanErgodicReport> {
    if !(horizon > 0.0) {
        return Err(Error::Invalid("horizon must be positive".into()));
    }
    let cert = BoundednessCertificate::evaluate(gen, super::matrix::DEFAULT_TOL_IM)?;
    let tol_abs = cert.tol_abs;
    let split = ordered_schur_split(gen.matrix(), |z| z.norm() <= tol_abs.max(1e-12))?;
    let p_exact = spectral_projector(&split)?;

    // resolve the fastest rotation on the quadrature grid
    let omega_max = cert
        .eigenvalues
        .iter()
        .map(|z| z.im.abs())
        .fold(0.0, f64::max);
    let n_steps = ((horizon * (1.0 + omega_max) * 20.0).ceil() as usize)
        .clamp(2_000, 400_000);
    let ds = horizon / n_steps as f64;

    let step = expm(&gen.matrix().scale(C64::new(ds, 0.0)))?;
    let mut power = CMat::identity(gen.dim());
    let mut acc = power.scale(C64::new(0.5, 0.0));
    for k in 1..=n_steps {
        power = step.mul(&power);
        let w = if k == n_steps { 0.5 } else { 1.0 };
        acc = acc.add(&power.scale(C64::new(w, 0.0)));
    }
    let p_empirical = acc.scale(C64::new(ds / horizon, 0.0));
    let deviation = op_norm_2(&p_exact.sub(&p_empirical))?;
    Ok(MeanErgodicReport {
        p_exact,
        p_empirical,
        deviation,
        horizon,
        ds,
    })
}
