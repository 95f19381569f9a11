//! Matrix semigroups `T(t) = exp(tA)` for dense complex generators.
//!
//! Construction evaluates a boundedness certificate: the semigroup is
//! bounded iff every eigenvalue has `Re λ ≤ 0` and the eigenvalues on the
//! imaginary axis are semisimple. The dichotomy is exact in theory; here a
//! declared threshold (relative to `‖A‖`) stands in for "on the axis" and is
//! surfaced in the certificate rather than hidden.

use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::{Signal, TimeGrid};
use crate::linalg::{expm, null_space, schur, CMat};
use crate::semigroup::{Capabilities, SemigroupEvaluator};
use crate::vector::{pairing, ComplexVector};
use crate::C64;

/// Default relative threshold for "purely imaginary eigenvalue".
pub const DEFAULT_TOL_IM: f64 = 1e-9;

/// Dense complex generator `A` (units 1/time).
#[derive(Debug, Clone)]
pub struct MatrixGenerator {
    a: CMat,
}

impl MatrixGenerator {
    pub fn new(a: CMat) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Invalid("generator matrix must be square".into()));
        }
        if a.data().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Invalid("generator entries must be finite".into()));
        }
        Ok(Self { a })
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.a
    }

    /// Scale used for relative eigenvalue thresholds.
    pub fn scale(&self) -> f64 {
        self.a.norm_fro().max(1e-300)
    }

    pub fn eigenvalues(&self) -> Result<Vec<C64>> {
        Ok(schur(&self.a)?.eigenvalues())
    }
}

/// Certificate deciding whether `‖exp(tA)‖` stays bounded as `t → ∞`.
#[derive(Debug, Clone)]
pub struct BoundednessCertificate {
    pub eigenvalues: Vec<C64>,
    /// `max Re σ(A)`; also the pseudo-spectral bound `s₀(A)` in finite
    /// dimensions.
    pub max_re: f64,
    /// Count of eigenvalues within the imaginary-axis threshold.
    pub imaginary_count: usize,
    /// True when some imaginary-axis eigenvalue cluster is defective
    /// (geometric < algebraic multiplicity).
    pub imaginary_defective: bool,
    pub bounded: bool,
    /// Absolute threshold used: `tol_im · ‖A‖`.
    pub tol_abs: f64,
}

impl BoundednessCertificate {
    pub fn evaluate(gen: &MatrixGenerator, tol_im: f64) -> Result<Self> {
        let eigenvalues = gen.eigenvalues()?;
        let tol_abs = tol_im * gen.scale();
        let max_re = eigenvalues.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);

        // cluster the imaginary-axis eigenvalues by imaginary part
        let mut axis: Vec<C64> = eigenvalues
            .iter()
            .copied()
            .filter(|z| z.re.abs() <= tol_abs)
            .collect();
        axis.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        let imaginary_count = axis.len();

        let cluster_tol = (tol_abs * 10.0).max(1e-12 * gen.scale());
        let mut imaginary_defective = false;
        let mut i = 0;
        while i < axis.len() {
            let mut j = i + 1;
            while j < axis.len() && (axis[j].im - axis[j - 1].im).abs() <= cluster_tol {
                j += 1;
            }
            let algebraic = j - i;
            if algebraic > 1 {
                let center = C64::new(
                    0.0,
                    axis[i..j].iter().map(|z| z.im).sum::<f64>() / algebraic as f64,
                );
                let shifted = gen.a.sub(&CMat::diag(&alloc::vec![center; gen.dim()]));
                let kernel = null_space(&shifted, 1e-8)?;
                if kernel.cols() < algebraic {
                    imaginary_defective = true;
                }
            }
            i = j;
        }

        let bounded = max_re <= tol_abs && !imaginary_defective;
        Ok(Self {
            eigenvalues,
            max_re,
            imaginary_count,
            imaginary_defective,
            bounded,
            tol_abs,
        })
    }
}

/// `T(t) = exp(tA)` with the certificate attached.
#[derive(Debug, Clone)]
pub struct MatrixSemigroup {
    gen: MatrixGenerator,
    certificate: BoundednessCertificate,
    group_mode: bool,
}

impl MatrixSemigroup {
    /// Semigroup mode: `t ≥ 0` only.
    pub fn new(gen: MatrixGenerator) -> Result<Self> {
        Self::with_tolerance(gen, DEFAULT_TOL_IM, false)
    }

    /// Group mode additionally admits negative times (meaningful when the
    /// spectrum is purely imaginary and semisimple).
    pub fn new_group(gen: MatrixGenerator) -> Result<Self> {
        Self::with_tolerance(gen, DEFAULT_TOL_IM, true)
    }

    pub fn with_tolerance(gen: MatrixGenerator, tol_im: f64, group_mode: bool) -> Result<Self> {
        let certificate = BoundednessCertificate::evaluate(&gen, tol_im)?;
        Ok(Self {
            gen,
            certificate,
            group_mode,
        })
    }

    pub fn generator(&self) -> &MatrixGenerator {
        &self.gen
    }

    pub fn certificate(&self) -> &BoundednessCertificate {
        &self.certificate
    }

    pub fn is_group(&self) -> bool {
        self.group_mode
    }

    /// Propagator `exp(tA)` as a matrix.
    pub fn propagator(&self, t: f64) -> Result<CMat> {
        self.check_time(t)?;
        expm(&self.gen.a.scale(C64::new(t, 0.0)))
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if !t.is_finite() {
            return Err(Error::Invalid("time must be finite".into()));
        }
        if t < 0.0 && !self.group_mode {
            return Err(Error::Invalid(
                "negative time requires group mode (semigroup only evolves forward)".into(),
            ));
        }
        Ok(())
    }

    /// Largest eigenvalue real part of the Hermitian part `(A + A*)/2`;
    /// nonpositive iff the semigroup is contractive.
    pub fn dissipativity_bound(&self) -> Result<f64> {
        let herm = self.gen.a.hermitian_part();
        let eigs = schur(&herm)?.eigenvalues();
        Ok(eigs.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max))
    }
}

impl SemigroupEvaluator for MatrixSemigroup {
    fn dim(&self) -> usize {
        self.gen.dim()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            has_resolvent_closed_form: false,
            is_contractive_claimed: false,
            adjoint_available: true,
            group_available: self.group_mode,
            law_tolerance: 1e-9,
        }
    }

    fn apply(&self, t: f64, x: &ComplexVector) -> Result<ComplexVector> {
        self.check_time(t)?;
        if t == 0.0 {
            return Ok(x.clone());
        }
        self.propagator(t)?.apply(x)
    }

    fn pair(&self, x: &ComplexVector, y: &ComplexVector) -> Result<C64> {
        pairing(x, y)
    }

    /// Stepped orbit: one `exp(dt·A)` factorization, then repeated
    /// matrix-vector products along the grid.
    fn weak_orbit(&self, x: &ComplexVector, y: &ComplexVector, grid: &TimeGrid) -> Result<Signal> {
        let step = expm(&self.gen.a.scale(C64::new(grid.dt(), 0.0)))?;
        let mut state = if grid.t_start() == 0.0 {
            x.clone()
        } else {
            self.apply(grid.t_start(), x)?
        };
        let mut values = Vec::with_capacity(grid.len());
        values.push(pairing(&state, y)?);
        for _ in 0..grid.n_steps() {
            state = step.apply(&state)?;
            values.push(pairing(&state, y)?);
        }
        Signal::new(grid.clone(), values)
    }
}
