//! Resolvent evaluation and the resolvent-side stability functionals.
//!
//! All functionals are evaluated strictly inside the right half-plane at
//! `λ = a + is`, `a > 0`, with explicit truncation handling: frequency
//! integrals run over `[-S, S]` with `S = 50(1 + ‖A‖)` by default, plus an
//! analytic tail correction derived from the leading `⟨x,y⟩/λ` (resp.
//! `⟨x,y⟩/λ²`) behaviour of the resolvent at infinity. Every result carries
//! the truncation parameters that produced it.
//!
//! The functionals:
//!
//! * `abel_square_integral` — `a ∫ |⟨R(a+is)x, y⟩|² ds`; its `a → 0⁺` limit
//!   vanishes exactly when no imaginary-axis eigenvalue is visible to the
//!   pair, and equals `π Σ |c_j|²` over seen eigenfrequencies otherwise.
//! * `abel_pointwise` — `‖a R(a+is)x‖`, the frequency-resolved eigenvalue
//!   detector.
//! * `plancherel_check` — both sides of
//!   `∫|⟨R(a+is)x,y⟩|² ds = 2π ∫ e^{−2at}|⟨T(t)x,y⟩|² dt`.
//! * `chill_tomilov` — the curve `I(a) = ∫ |⟨R²(a+is)x,y⟩| ds`, its
//!   integral over `a ∈ (0, 1]`, the monotonicity check, and the trend of
//!   `a·I(a)`.
//! * `inverse_laplace_orbit` — `⟨T(t)x,y⟩ = (1/2πt)∫ e^{(a+is)t}
//!   ⟨R²(a+is)x,y⟩ ds`, stabilized by subtracting the `⟨x,y⟩/(a+is)²`
//!   symbol (whose full-line integral is known in closed form).
//!
//! Matrix probes cache a Schur form so each evaluation is one triangular
//! solve; `R²` is two successive solves of the same factor, never a separate
//! code path. Multiplication probes by a large structured measure may route
//! the Abel square integral through the time domain (the Plancherel identity
//! read right-to-left); the result records which route produced it.

use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::backends::{MatrixSemigroup, MultiplicationSemigroup};
use crate::error::{Error, Result};
use crate::grid::{Signal, TimeGrid};
use crate::linalg::{schur, CMat, Lu};
use crate::semigroup::SemigroupEvaluator;
use crate::vector::ComplexVector;
use crate::C64;

use core::f64::consts::PI;

/// Which evaluation route produced an integral value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    FrequencyDomain,
    TimeDomain,
}

/// Atom-count threshold above which multiplication probes switch the Abel
/// square integral to the time-domain route.
const TIME_DOMAIN_CUTOFF: usize = 4096;

enum ProbeBackend<'a> {
    Matrix {
        sg: &'a MatrixSemigroup,
        q: CMat,
        t: CMat,
    },
    Multiplication {
        sg: &'a MultiplicationSemigroup,
    },
}

/// Resolvent evaluator bound to a backend, carrying truncation parameters.
pub struct ResolventProbe<'a> {
    backend: ProbeBackend<'a>,
    /// Frequency truncation: integrals run over `[-s_max, s_max]`.
    pub s_max: f64,
    /// Base frequency step; functionals refine it adaptively with `a`.
    pub ds: f64,
}

/// Value with its truncation provenance.
#[derive(Debug, Clone)]
pub struct IntegralValue {
    pub value: f64,
    /// Analytic tail correction included in `value`.
    pub tail_correction: f64,
    pub s_max: f64,
    pub ds: f64,
    pub route: Route,
}

/// Both sides of the Plancherel identity and their relative error.
#[derive(Debug, Clone)]
pub struct PlancherelCheck {
    pub lhs_frequency: f64,
    pub rhs_time: f64,
    pub rel_error: f64,
    pub horizon: f64,
    pub s_max: f64,
}

/// The resolvent-square integrability report.
#[derive(Debug, Clone)]
pub struct ChillTomilovReport {
    /// `(a, I(a))` on a decreasing-to-zero log grid.
    pub curve: Vec<(f64, f64)>,
    /// `∫₀¹ I(a) da` (trapezoid on the grid, rectangle on `[0, a_min]`).
    pub double_integral: f64,
    /// Linear extrapolation of `a·I(a)` to `a = 0⁺`.
    pub limit_estimate: f64,
    /// Last computed `a·I(a)`.
    pub last_value: f64,
    /// `I` nonincreasing in `a` on the grid (within relative slack 1e−9).
    pub monotone_nonincreasing: bool,
}

impl<'a> ResolventProbe<'a> {
    /// Matrix probe with cached Schur factorization;
    /// `s_max = 50(1 + ‖A‖₁)`.
    pub fn for_matrix(sg: &'a MatrixSemigroup) -> Result<Self> {
        let dec = schur(sg.generator().matrix())?;
        Ok(Self {
            backend: ProbeBackend::Matrix {
                sg,
                q: dec.q,
                t: dec.t,
            },
            s_max: 50.0 * (1.0 + sg.generator().matrix().norm_one()),
            ds: 0.01,
        })
    }

    /// Multiplication probe (entrywise closed form);
    /// `s_max = 50(1 + max|r_j|)`.
    pub fn for_multiplication(sg: &'a MultiplicationSemigroup) -> Self {
        Self {
            backend: ProbeBackend::Multiplication { sg },
            s_max: 50.0 * (1.0 + sg.measure().location_radius()),
            ds: 0.01,
        }
    }

    /// Overrides the truncation parameters.
    pub fn with_truncation(mut self, s_max: f64, ds: f64) -> Self {
        self.s_max = s_max;
        self.ds = ds;
        self
    }

    /// Resolvent evaluation mode of this probe: `linear_solve` for matrix
    /// backends (through the cached factorization), `closed_form` for
    /// multiplication backends. Orbit-only backends use Laplace quadrature
    /// through [`laplace_resolvent_of_signal`] instead.
    pub fn mode(&self) -> &'static str {
        match &self.backend {
            ProbeBackend::Matrix { .. } => "linear_solve",
            ProbeBackend::Multiplication { .. } => "closed_form",
        }
    }

    fn evaluator(&self) -> &dyn SemigroupEvaluator {
        match &self.backend {
            ProbeBackend::Matrix { sg, .. } => *sg,
            ProbeBackend::Multiplication { sg } => *sg,
        }
    }

    /// `max Re σ(A)` for matrices (exact `s₀(A)` in finite dimensions);
    /// `0` for multiplication backends (spectrum on the axis).
    pub fn s0_estimate(&self) -> f64 {
        match &self.backend {
            ProbeBackend::Matrix { t, .. } => (0..t.rows())
                .map(|i| t[(i, i)].re)
                .fold(f64::NEG_INFINITY, f64::max),
            ProbeBackend::Multiplication { .. } => 0.0,
        }
    }

    fn check_resolvent_set(&self, lambda: C64) -> Result<()> {
        let dist = match &self.backend {
            ProbeBackend::Matrix { t, .. } => (0..t.rows())
                .map(|i| (lambda - t[(i, i)]).norm())
                .fold(f64::INFINITY, f64::min),
            ProbeBackend::Multiplication { sg } => sg
                .measure()
                .atoms()
                .iter()
                .map(|a| (lambda - C64::new(0.0, a.location)).norm())
                .fold(f64::INFINITY, f64::min),
        };
        if dist < 1e-13 * (1.0 + lambda.norm()) {
            return Err(Error::Singular(alloc::format!(
                "λ = {lambda} lies on the spectrum"
            )));
        }
        Ok(())
    }

    /// Solves `(λI − A) v = x` through the cached factorization.
    fn resolve_vec(&self, lambda: C64, x: &ComplexVector) -> Result<ComplexVector> {
        self.check_resolvent_set(lambda)?;
        match &self.backend {
            ProbeBackend::Matrix { q, t, .. } => {
                // v = Q (λI − T)^{-1} Q* x
                let mut u = adjoint_apply(q, x.entries());
                triangular_resolvent_solve(t, lambda, &mut u)?;
                ComplexVector::new(q.matvec(&u))
            }
            ProbeBackend::Multiplication { sg } => {
                let vals: Vec<C64> = sg
                    .measure()
                    .atoms()
                    .iter()
                    .zip(x.entries())
                    .map(|(atom, &f)| f / (lambda - C64::new(0.0, atom.location)))
                    .collect();
                ComplexVector::new(vals)
            }
        }
    }

    /// `R(λ, A) x` with a condition-number report for the linear solve
    /// (matrix backends; closed-form backends report `None`).
    pub fn resolvent_apply(
        &self,
        lambda: C64,
        x: &ComplexVector,
    ) -> Result<(ComplexVector, Option<f64>)> {
        match &self.backend {
            ProbeBackend::Matrix { sg, .. } => {
                self.check_resolvent_set(lambda)?;
                let n = sg.dim();
                let shifted = CMat::from_fn(n, n, |i, j| {
                    let id = if i == j { lambda } else { C64::new(0.0, 0.0) };
                    id - sg.generator().matrix()[(i, j)]
                });
                let lu = Lu::factor(&shifted)?;
                let v = ComplexVector::new(lu.solve(x.entries())?)?;
                let cond = lu.condition_one(&shifted)?;
                Ok((v, Some(cond)))
            }
            ProbeBackend::Multiplication { .. } => {
                Ok((self.resolve_vec(lambda, x)?, None))
            }
        }
    }

    /// `⟨R(λ)x, y⟩` in the backend pairing.
    pub fn scalar(&self, lambda: C64, x: &ComplexVector, y: &ComplexVector) -> Result<C64> {
        let v = self.resolve_vec(lambda, x)?;
        self.evaluator().pair(&v, y)
    }

    /// `⟨R²(λ)x, y⟩` by two successive solves of the same factorization.
    pub fn scalar_r2(&self, lambda: C64, x: &ComplexVector, y: &ComplexVector) -> Result<C64> {
        let v = self.resolve_vec(lambda, x)?;
        let v2 = self.resolve_vec(lambda, &v)?;
        self.evaluator().pair(&v2, y)
    }

    /// `‖a R(a+is) x‖` in the backend norm.
    pub fn abel_pointwise(&self, x: &ComplexVector, a: f64, s: f64) -> Result<f64> {
        if !(a > 0.0) {
            return Err(Error::Invalid("a must be positive".into()));
        }
        let v = self.resolve_vec(C64::new(a, s), x)?;
        Ok(a * self.evaluator().state_norm(&v)?)
    }

    /// Precomputes the scalar-resolvent curve `s ↦ ⟨R(a+is)x, y⟩` on a
    /// symmetric grid; `squared` selects `R²`.
    fn scalar_curve(
        &self,
        x: &ComplexVector,
        y: &ComplexVector,
        a: f64,
        ds: f64,
        squared: bool,
    ) -> Result<(Vec<C64>, f64)> {
        let n_half = (self.s_max / ds).ceil() as usize;
        let h = self.s_max / n_half as f64;
        let total = 2 * n_half + 1;
        let mut out = Vec::with_capacity(total);
        match &self.backend {
            ProbeBackend::Matrix { q, t, .. } => {
                let zx = adjoint_apply(q, x.entries());
                let zy = adjoint_apply(q, y.entries());
                let mut u = alloc::vec![C64::new(0.0, 0.0); zx.len()];
                for k in 0..total {
                    let s = -self.s_max + h * k as f64;
                    let lambda = C64::new(a, s);
                    u.copy_from_slice(&zx);
                    triangular_resolvent_solve(t, lambda, &mut u)?;
                    if squared {
                        triangular_resolvent_solve(t, lambda, &mut u)?;
                    }
                    // ⟨Qu, Qw⟩ = ⟨u, w⟩
                    let mut acc = C64::new(0.0, 0.0);
                    for (ui, wi) in u.iter().zip(&zy) {
                        acc += ui * wi.conj();
                    }
                    out.push(acc);
                }
            }
            ProbeBackend::Multiplication { sg } => {
                let coeff: Vec<(f64, C64)> = sg
                    .measure()
                    .atoms()
                    .iter()
                    .zip(x.entries().iter().zip(y.entries()))
                    .map(|(atom, (&f, &g))| (atom.location, f * g.conj() * atom.weight))
                    .collect();
                for k in 0..total {
                    let s = -self.s_max + h * k as f64;
                    let lambda = C64::new(a, s);
                    let mut acc = C64::new(0.0, 0.0);
                    for &(r, cpair) in &coeff {
                        let denom = lambda - C64::new(0.0, r);
                        let base = cpair / denom;
                        acc += if squared { base / denom } else { base };
                    }
                    out.push(acc);
                }
            }
        }
        Ok((out, h))
    }

    /// `a ∫ |⟨R(a+is)x, y⟩|² ds` with analytic tail beyond `±s_max`.
    pub fn abel_square_integral(
        &self,
        x: &ComplexVector,
        y: &ComplexVector,
        a: f64,
    ) -> Result<IntegralValue> {
        if !(a > 0.0) {
            return Err(Error::Invalid("a must be positive".into()));
        }
        if let ProbeBackend::Multiplication { sg } = &self.backend {
            if sg.dim() > TIME_DOMAIN_CUTOFF {
                return self.abel_square_time_domain(sg, x, y, a);
            }
        }
        let ds = self.ds.min(a / 8.0);
        let (curve, h) = self.scalar_curve(x, y, a, ds, false)?;
        let integral = trapezoid_abs_sq(&curve, h);
        let c = self.evaluator().pair(x, y)?;
        let tail = 2.0 * c.norm_sqr() * (PI / 2.0 - (self.s_max / a).atan());
        Ok(IntegralValue {
            value: a * integral + tail,
            tail_correction: tail,
            s_max: self.s_max,
            ds: h,
            route: Route::FrequencyDomain,
        })
    }

    /// Time-domain route for the Abel square integral:
    /// `2πa ∫ e^{−2at} |⟨T(t)x,y⟩|² dt` (the Plancherel identity read
    /// backwards), used when the frequency sweep would be more expensive
    /// than orbit evaluation.
    fn abel_square_time_domain(
        &self,
        sg: &MultiplicationSemigroup,
        x: &ComplexVector,
        y: &ComplexVector,
        a: f64,
    ) -> Result<IntegralValue> {
        let horizon = 12.0 / a;
        let rate = 1.0 + sg.measure().location_radius();
        let dt = (0.05 / rate).min(0.01);
        let n = ((horizon / dt).ceil() as usize).max(16);
        let grid = TimeGrid::new(0.0, horizon / n as f64, n)?;
        let orbit = sg.weak_orbit(x, y, &grid)?;
        let mut acc = 0.0f64;
        for (k, t) in grid.points().enumerate() {
            let v = orbit.values()[k].norm_sqr() * (-2.0 * a * t).exp();
            acc += if k == 0 || k == n { 0.5 * v } else { v };
        }
        let value = 2.0 * PI * a * acc * grid.dt();
        Ok(IntegralValue {
            value,
            tail_correction: 0.0,
            s_max: horizon,
            ds: grid.dt(),
            route: Route::TimeDomain,
        })
    }

    /// Evaluates both sides of the Plancherel identity
    /// `∫|⟨R(a+is)x,y⟩|² ds = 2π ∫₀^∞ e^{−2at} |⟨T(t)x,y⟩|² dt`
    /// (right side truncated at `horizon`; require `a·horizon ≥ 10`).
    pub fn plancherel_check(
        &self,
        x: &ComplexVector,
        y: &ComplexVector,
        a: f64,
        horizon: f64,
    ) -> Result<PlancherelCheck> {
        if !(a > 0.0) {
            return Err(Error::Invalid("a must be positive".into()));
        }
        if a * horizon < 10.0 {
            return Err(Error::Invalid(
                "need a·horizon ≥ 10 so the time-side tail is negligible".into(),
            ));
        }
        let ds = self.ds.min(a / 8.0);
        let (curve, h) = self.scalar_curve(x, y, a, ds, false)?;
        let c = self.evaluator().pair(x, y)?;
        let tail = 2.0 * c.norm_sqr() * (PI / 2.0 - (self.s_max / a).atan()) / a;
        let lhs = trapezoid_abs_sq(&curve, h) + tail;

        let rate = 1.0 + self.oscillation_rate() + 2.0 * a;
        let n = ((horizon * rate * 20.0).ceil() as usize).clamp(4_000, 2_000_000);
        let grid = TimeGrid::new(0.0, horizon / n as f64, n)?;
        let orbit = self.evaluator().weak_orbit(x, y, &grid)?;
        let mut acc = 0.0f64;
        for (k, t) in grid.points().enumerate() {
            let v = orbit.values()[k].norm_sqr() * (-2.0 * a * t).exp();
            acc += if k == 0 || k == n { 0.5 * v } else { v };
        }
        let rhs = 2.0 * PI * acc * grid.dt();
        let rel_error = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1e-300);
        Ok(PlancherelCheck {
            lhs_frequency: lhs,
            rhs_time: rhs,
            rel_error,
            horizon,
            s_max: self.s_max,
        })
    }

    fn oscillation_rate(&self) -> f64 {
        match &self.backend {
            ProbeBackend::Matrix { t, .. } => (0..t.rows())
                .map(|i| t[(i, i)].im.abs())
                .fold(0.0, f64::max),
            ProbeBackend::Multiplication { sg } => sg.measure().location_radius(),
        }
    }

    /// `I(a) = ∫ |⟨R²(a+is)x,y⟩| ds` on a log-spaced `a` grid in
    /// `[a_min, 1]`, with the derived integrability diagnostics.
    pub fn chill_tomilov(
        &self,
        x: &ComplexVector,
        y: &ComplexVector,
        a_min: f64,
        points: usize,
    ) -> Result<ChillTomilovReport> {
        if self.s0_estimate() > 1e-9 * (1.0 + self.oscillation_rate()) {
            return Err(Error::Invalid(alloc::format!(
                "s0 estimate {:.3e} > 0 violates the integrability hypothesis",
                self.s0_estimate()
            )));
        }
        if !(a_min > 0.0 && a_min < 1.0) || points < 4 {
            return Err(Error::Invalid("need 0 < a_min < 1 and ≥ 4 grid points".into()));
        }
        let ratio = (1.0 / a_min).powf(1.0 / (points - 1) as f64);
        let c_abs = self.evaluator().pair(x, y)?.norm();

        let mut curve = Vec::with_capacity(points);
        let mut a = a_min;
        for _ in 0..points {
            let ds = self.ds.min(a / 8.0);
            let (vals, h) = self.scalar_curve(x, y, a, ds, true)?;
            let mut integral = 0.0f64;
            for (k, v) in vals.iter().enumerate() {
                let w = if k == 0 || k == vals.len() - 1 { 0.5 } else { 1.0 };
                integral += w * v.norm();
            }
            integral *= h;
            let tail = 2.0 * c_abs * (PI / 2.0 - (self.s_max / a).atan()) / a;
            curve.push((a.min(1.0), integral + tail));
            a *= ratio;
        }
        // ensure the last point is exactly a = 1
        if let Some(last) = curve.last_mut() {
            last.0 = 1.0;
        }

        let mut monotone = true;
        for w in curve.windows(2) {
            if w[1].1 > w[0].1 * (1.0 + 1e-9) + 1e-12 {
                monotone = false;
            }
        }
        // ∫₀¹ I(a) da: rectangle on [0, a_min] + trapezoid on the grid
        let mut double_integral = curve[0].1 * a_min;
        for w in curve.windows(2) {
            double_integral += 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0);
        }
        let v0 = curve[1].0 * curve[1].1;
        let v1 = curve[0].0 * curve[0].1;
        let (a0, a1) = (curve[1].0, curve[0].0);
        let limit_estimate = v1 - a1 * (v0 - v1) / (a0 - a1);
        Ok(ChillTomilovReport {
            double_integral,
            limit_estimate,
            last_value: v1,
            monotone_nonincreasing: monotone,
            curve,
        })
    }

    /// Reconstructs `⟨T(t)x, y⟩` from the inverse Laplace representation
    /// `(1/2πt) ∫ e^{(a+is)t} ⟨R²(a+is)x,y⟩ ds`.
    ///
    /// The `⟨x,y⟩/(a+is)²` symbol is subtracted inside the truncated
    /// integral and restored through its exact full-line value `⟨x,y⟩`,
    /// which removes the dominant truncation error.
    pub fn inverse_laplace_orbit(
        &self,
        x: &ComplexVector,
        y: &ComplexVector,
        t: f64,
        a: f64,
    ) -> Result<C64> {
        if !(t > 0.0) || !(a > 0.0) {
            return Err(Error::Invalid("need t > 0 and a > 0".into()));
        }
        if self.s0_estimate() > 1e-9 * (1.0 + self.oscillation_rate()) {
            return Err(Error::Invalid("s0 estimate > 0".into()));
        }
        if self.ds * t > 0.1 {
            return Err(Error::Invalid(alloc::format!(
                "ds·t = {:.3} > 0.1: refine the probe frequency step for this horizon",
                self.ds * t
            )));
        }
        let (curve, h) = self.scalar_curve(x, y, a, self.ds, true)?;
        let c = self.evaluator().pair(x, y)?;
        let mut acc = C64::new(0.0, 0.0);
        for (k, v) in curve.iter().enumerate() {
            let s = -self.s_max + h * (k as f64);
            let lambda = C64::new(a, s);
            let integrand = (v - c / (lambda * lambda)) * C64::from_polar(1.0, s * t);
            let w = if k == 0 || k == curve.len() - 1 { 0.5 } else { 1.0 };
            acc += integrand * w;
        }
        acc *= h;
        Ok(acc * C64::new((a * t).exp() / (2.0 * PI * t), 0.0) + c)
    }

    /// The proof-matched choice `a = 1/t` together with the envelope
    /// `|⟨T(t)x,y⟩| ≤ a·I(a)`; returns `(reconstruction, envelope)`.
    pub fn inverse_laplace_proof_choice(
        &self,
        x: &ComplexVector,
        y: &ComplexVector,
        t: f64,
    ) -> Result<(C64, f64)> {
        let a = 1.0 / t;
        let value = self.inverse_laplace_orbit(x, y, t, a)?;
        let ds = self.ds.min(a / 8.0);
        let (vals, h) = self.scalar_curve(x, y, a, ds, true)?;
        let mut integral = 0.0f64;
        for (k, v) in vals.iter().enumerate() {
            let w = if k == 0 || k == vals.len() - 1 { 0.5 } else { 1.0 };
            integral += w * v.norm();
        }
        let c_abs = self.evaluator().pair(x, y)?.norm();
        let tail = 2.0 * c_abs * (PI / 2.0 - (self.s_max / a).atan()) / a;
        Ok((value, a * (integral * h + tail)))
    }
}

/// `max Re σ(A)`: the pseudo-spectral bound, exact for matrices.
pub fn s0_estimate(gen: &crate::backends::MatrixGenerator) -> Result<f64> {
    Ok(schur(gen.matrix())?
        .eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Truncated Laplace-transform resolvent
/// `∫₀^{t_max} e^{−λt} T(t)x dt ≈ R(λ)x`, with the reported tail bound
/// `‖x‖ · M · e^{−Re λ · t_max} / Re λ` (`M` from the computed orbit).
/// This is the only resolvent mode available to orbit-only backends.
pub fn laplace_resolvent_vector(
    ev: &dyn SemigroupEvaluator,
    lambda: C64,
    x: &ComplexVector,
    t_max: f64,
    dt: f64,
) -> Result<(ComplexVector, f64)> {
    if lambda.re <= 0.0 {
        return Err(Error::Invalid(
            "Laplace quadrature needs Re λ > 0".into(),
        ));
    }
    let n = ((t_max / dt).ceil() as usize).max(8);
    let grid = TimeGrid::new(0.0, t_max / n as f64, n)?;
    let mut acc = alloc::vec![C64::new(0.0, 0.0); x.dim()];
    let mut growth = 0.0f64;
    let x_norm = ev.state_norm(x)?.max(1e-300);
    let mut state = x.clone();
    let step = grid.dt();
    for (k, t) in grid.points().enumerate() {
        if k > 0 {
            state = ev.apply(t, x)?;
        }
        growth = growth.max(ev.state_norm(&state)? / x_norm);
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        let factor = C64::from_polar(w * step, 0.0) * (-lambda * t).exp();
        for (a, &s) in acc.iter_mut().zip(state.entries()) {
            *a += s * factor;
        }
    }
    let tail = x_norm * growth * (-lambda.re * t_max).exp() / lambda.re;
    Ok((ComplexVector::new(acc)?, tail))
}

/// Scalar Laplace resolvent of a sampled orbit: `∫ e^{−λt} s(t) dt` over the
/// signal's grid with the same tail-bound convention.
pub fn laplace_resolvent_of_signal(orbit: &Signal, lambda: C64) -> Result<(C64, f64)> {
    if lambda.re <= 0.0 {
        return Err(Error::Invalid("Laplace quadrature needs Re λ > 0".into()));
    }
    let grid = orbit.grid();
    let mut acc = C64::new(0.0, 0.0);
    let mut sup = 0.0f64;
    let n = grid.n_steps();
    for (k, t) in grid.points().enumerate() {
        let v = orbit.values()[k];
        sup = sup.max(v.norm());
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        acc += v * (-lambda * t).exp() * w;
    }
    let tail = sup * (-lambda.re * grid.t_max()).exp() / lambda.re;
    Ok((acc * grid.dt(), tail))
}

fn adjoint_apply(q: &CMat, x: &[C64]) -> Vec<C64> {
    let n = q.rows();
    let mut out = alloc::vec![C64::new(0.0, 0.0); n];
    for (i, item) in out.iter_mut().enumerate() {
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..n {
            acc += q[(j, i)].conj() * x[j];
        }
        *item = acc;
    }
    out
}

/// Solves `(λI − T) u = b` in place for upper-triangular `T`.
fn triangular_resolvent_solve(t: &CMat, lambda: C64, b: &mut [C64]) -> Result<()> {
    let n = t.rows();
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in i + 1..n {
            // (λI − T) has off-diagonal −T_{ij}
            acc += t[(i, j)] * b[j];
        }
        let d = lambda - t[(i, i)];
        if d.norm() < 1e-300 {
            return Err(Error::Singular("λ on the spectrum".into()));
        }
        b[i] = acc / d;
    }
    Ok(())
}

fn trapezoid_abs_sq(vals: &[C64], h: f64) -> f64 {
    let mut acc = 0.0f64;
    for (k, v) in vals.iter().enumerate() {
        let w = if k == 0 || k == vals.len() - 1 { 0.5 } else { 1.0 };
        acc += w * v.norm_sqr();
    }
    acc * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::{MatrixGenerator, MatrixSemigroup};
    use crate::measures::DiscreteMeasure;
    use crate::rng::SplitMix64;
    use crate::synth;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn scalar_sg(z: C64) -> MatrixSemigroup {
        MatrixSemigroup::new(MatrixGenerator::new(CMat::diag(&[z])).unwrap()).unwrap()
    }

    #[test]
    fn s0_estimate_ignores_transient_growth() {
        // triangular with a large off-diagonal: eigenvalues −1, −2
        let a = CMat::from_rows(&[
            vec![c(-1.0, 0.0), c(10.0, 0.0)],
            vec![c(0.0, 0.0), c(-2.0, 0.0)],
        ])
        .unwrap();
        let gen = crate::backends::MatrixGenerator::new(a).unwrap();
        assert!((s0_estimate(&gen).unwrap() + 1.0).abs() < 1e-12);

        let gen = crate::backends::MatrixGenerator::new(CMat::diag(&[c(0.0, 1.0), c(-1.0, 0.0)]))
            .unwrap();
        assert!(s0_estimate(&gen).unwrap().abs() < 1e-12);
    }

    #[test]
    fn scalar_resolvent_value() {
        let sg = scalar_sg(c(-1.0, 0.0));
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        assert_eq!(probe.mode(), "linear_solve");
        let x = ComplexVector::ones(1);
        let (v, cond) = probe.resolvent_apply(c(1.0, 0.0), &x).unwrap();
        assert!((v.entries()[0] - c(0.5, 0.0)).norm() < 1e-14);
        assert!(cond.unwrap() >= 1.0);
    }

    #[test]
    fn diagonal_resolvent_values() {
        let a = CMat::diag(&[c(0.0, 1.0), c(-1.0, 0.0)]);
        let sg = MatrixSemigroup::new(MatrixGenerator::new(a).unwrap()).unwrap();
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        let x = ComplexVector::ones(2);
        let (v, _) = probe.resolvent_apply(c(1.0, 0.0), &x).unwrap();
        assert!((v.entries()[0] - c(0.5, 0.5)).norm() < 1e-13);
        assert!((v.entries()[1] - c(0.5, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn resolvent_identity_on_random_stable_matrix() {
        let mut rng = SplitMix64::new(14);
        let a = synth::random_stable_generator(&mut rng, 5, -2.0, -0.2, 2.0);
        let sg = MatrixSemigroup::new(MatrixGenerator::new(a).unwrap()).unwrap();
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        for _ in 0..10 {
            let x = synth::random_unit_vector(&mut rng, 5);
            let l1 = C64::new(rng.uniform_in(0.2, 2.0), rng.uniform_in(-2.0, 2.0));
            let l2 = C64::new(rng.uniform_in(0.2, 2.0), rng.uniform_in(-2.0, 2.0));
            // R(λ₁) − R(λ₂) = (λ₂ − λ₁) R(λ₁) R(λ₂)
            let r1 = probe.resolve_vec(l1, &x).unwrap();
            let r2 = probe.resolve_vec(l2, &x).unwrap();
            let lhs = r1.sub(&r2).unwrap();
            let rhs = probe.resolve_vec(l1, &r2).unwrap().scaled(l2 - l1);
            assert!(lhs.sub(&rhs).unwrap().norm() < 1e-10);
        }
    }

    #[test]
    fn multiplication_resolvent_closed_form() {
        let mu = DiscreteMeasure::from_atoms(&[(1.0, 0.5), (-1.0, 0.5)]).unwrap();
        let sg = crate::backends::MultiplicationSemigroup::new(mu).unwrap();
        let probe = ResolventProbe::for_multiplication(&sg);
        let x = ComplexVector::ones(2);
        let v = probe.resolve_vec(c(1.0, 0.0), &x).unwrap();
        assert!((v.entries()[0] - c(1.0, 0.0) / c(1.0, -1.0)).norm() < 1e-14);
        assert!((v.entries()[1] - c(1.0, 0.0) / c(1.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn abel_square_integral_scalar_closed_forms() {
        // A = [[−1]]: a·∫ ds/((a+1)² + s²) = πa/(a+1)
        let sg = scalar_sg(c(-1.0, 0.0));
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        let x = ComplexVector::ones(1);
        for &a in &[1.0, 0.5, 0.1] {
            let got = probe.abel_square_integral(&x, &x, a).unwrap().value;
            let want = PI * a / (a + 1.0);
            assert!((got - want).abs() < 1e-3 * want.max(0.1), "a={a}: {got} vs {want}");
        }
        // decays to zero along the ladder
        let ladder: Vec<f64> = [0.1, 0.01, 0.001]
            .iter()
            .map(|&a| probe.abel_square_integral(&x, &x, a).unwrap().value)
            .collect();
        assert!(ladder[0] > ladder[1] && ladder[1] > ladder[2]);
        assert!(ladder[2] < 0.005);
    }

    #[test]
    fn abel_square_integral_detects_imaginary_eigenvalue() {
        // A = [[i]]: a·∫ ds/(a² + (s−1)²) = π for every a
        let sg = scalar_sg(c(0.0, 1.0));
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        let x = ComplexVector::ones(1);
        for &a in &[1.0, 0.3, 0.05] {
            let got = probe.abel_square_integral(&x, &x, a).unwrap().value;
            assert!((got - PI).abs() < 1e-3 * PI, "a={a}: {got}");
        }
    }

    #[test]
    fn abel_pointwise_frequency_detection() {
        let sg = scalar_sg(c(0.0, 1.0));
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        let x = ComplexVector::ones(1);
        // at the eigenfrequency: ‖aR(a+i)x‖ = 1 for every a
        for &a in &[0.5, 0.1, 0.01] {
            let v = probe.abel_pointwise(&x, a, 1.0).unwrap();
            assert!((v - 1.0).abs() < 1e-12, "a={a}");
        }
        // off the eigenfrequency it decays like a
        let v = probe.abel_pointwise(&x, 0.01, 0.0).unwrap();
        assert!((v - 0.01 / (0.01f64 * 0.01 + 1.0).sqrt()).abs() < 1e-12);
        // stable scalar: bounded by a everywhere
        let sg = scalar_sg(c(-1.0, 0.0));
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        for &s in &[0.0, 1.0, -3.0] {
            assert!(probe.abel_pointwise(&x, 0.01, s).unwrap() <= 0.01 + 1e-15);
        }
    }

    #[test]
    fn plancherel_scalar_closed_form() {
        // both sides π/2 at a = 1 for A = [[−1]]
        let sg = scalar_sg(c(-1.0, 0.0));
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        let x = ComplexVector::ones(1);
        let chk = probe.plancherel_check(&x, &x, 1.0, 12.0).unwrap();
        assert!((chk.lhs_frequency - PI / 2.0).abs() < 1e-3);
        assert!(chk.rel_error < 1e-4, "rel error {}", chk.rel_error);
    }

    #[test]
    fn plancherel_zero_vector() {
        let sg = scalar_sg(c(-1.0, 0.0));
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        let x = ComplexVector::ones(1);
        let zero = x.scaled(c(0.0, 0.0));
        let chk = probe.plancherel_check(&zero, &x, 1.0, 12.0).unwrap();
        assert!(chk.lhs_frequency.abs() < 1e-14 && chk.rhs_time.abs() < 1e-14);
    }

    #[test]
    fn chill_tomilov_scalar_closed_forms() {
        // A = [[−1]]: I(a) = π/(a+1), ∫₀¹ I = π ln 2, a·I(a) → 0
        let sg = scalar_sg(c(-1.0, 0.0));
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        let x = ComplexVector::ones(1);
        let rep = probe.chill_tomilov(&x, &x, 1e-3, 40).unwrap();
        let want = PI * core::f64::consts::LN_2;
        assert!(
            (rep.double_integral - want).abs() < 1e-2,
            "∫I = {} vs {want}",
            rep.double_integral
        );
        assert!(rep.monotone_nonincreasing);
        assert!(rep.limit_estimate.abs() < 0.01, "limit {}", rep.limit_estimate);

        // A = [[i]]: I(a) = π/a, a·I(a) → π
        let sg = scalar_sg(c(0.0, 1.0));
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        let rep = probe.chill_tomilov(&x, &x, 1e-3, 40).unwrap();
        assert!(rep.monotone_nonincreasing);
        assert!((rep.limit_estimate - PI).abs() < 0.05, "limit {}", rep.limit_estimate);
    }

    #[test]
    fn chill_tomilov_rejects_positive_s0() {
        let sg = scalar_sg(c(0.5, 0.0));
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        let x = ComplexVector::ones(1);
        assert!(probe.chill_tomilov(&x, &x, 1e-2, 8).is_err());
    }

    #[test]
    fn inverse_laplace_scalar_reconstruction() {
        let sg = scalar_sg(c(-1.0, 0.0));
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        let x = ComplexVector::ones(1);
        let v = probe.inverse_laplace_orbit(&x, &x, 1.0, 0.5).unwrap();
        assert!(
            (v - c((-1.0f64).exp(), 0.0)).norm() < 1e-4,
            "got {v}, want e^{{-1}}"
        );
    }

    #[test]
    fn inverse_laplace_envelope_holds() {
        let sg = scalar_sg(c(-1.0, 0.0));
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        let x = ComplexVector::ones(1);
        let (value, envelope) = probe.inverse_laplace_proof_choice(&x, &x, 5.0).unwrap();
        // envelope ≈ 0.2·I(0.2) = 0.2π/1.2
        assert!((envelope - 0.2 * PI / 1.2).abs() < 0.01, "envelope {envelope}");
        assert!(value.norm() <= envelope);
        assert!((value.norm() - (-5.0f64).exp()).abs() < 1e-4);
    }

    #[test]
    fn inverse_laplace_requires_fine_frequency_step() {
        let sg = scalar_sg(c(-1.0, 0.0));
        let probe = ResolventProbe::for_matrix(&sg)
            .unwrap()
            .with_truncation(100.0, 0.05);
        let x = ComplexVector::ones(1);
        assert!(probe.inverse_laplace_orbit(&x, &x, 5.0, 0.2).is_err());
    }

    #[test]
    fn laplace_quadrature_consistent_with_solve() {
        let mut rng = SplitMix64::new(21);
        let a = synth::random_stable_generator(&mut rng, 4, -1.5, -0.3, 1.0);
        let sg = MatrixSemigroup::new(MatrixGenerator::new(a).unwrap()).unwrap();
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        let x = synth::random_unit_vector(&mut rng, 4);
        let lambda = c(1.2, 0.4);
        let (direct, _) = probe.resolvent_apply(lambda, &x).unwrap();
        let (quad, tail) = laplace_resolvent_vector(&sg, lambda, &x, 50.0, 0.002).unwrap();
        let err = direct.sub(&quad).unwrap().norm();
        // tail bound plus quadrature error allowance
        assert!(err <= tail + 1e-5, "err {err}, declared tail {tail}");
    }

    #[test]
    fn time_domain_route_matches_frequency_route() {
        // on a small structured measure both abel routes agree
        let mu = DiscreteMeasure::cantor(6).unwrap();
        let n = mu.len();
        let sg = crate::backends::MultiplicationSemigroup::new(mu).unwrap();
        let probe = ResolventProbe::for_multiplication(&sg);
        let ones = ComplexVector::ones(n);
        let a = 0.2;
        let freq = probe.abel_square_integral(&ones, &ones, a).unwrap();
        let time = probe.abel_square_time_domain(&sg, &ones, &ones, a).unwrap();
        assert_eq!(freq.route, Route::FrequencyDomain);
        assert_eq!(time.route, Route::TimeDomain);
        let rel = (freq.value - time.value).abs() / freq.value.max(1e-12);
        assert!(rel < 1e-3, "routes differ: {} vs {}", freq.value, time.value);
    }
}
