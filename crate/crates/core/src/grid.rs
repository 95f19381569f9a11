//! Uniform time grids, sampled orbit signals and quadrature on them.
//!
//! Orbit data is only ever available on uniform grids, so quadrature is
//! composite trapezoid throughout: exact on affine integrands, `O(dt²)`
//! otherwise, and spectrally accurate on analytic integrands sampled densely
//! enough — sufficient for every acceptance tolerance in the crate.

use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::C64;

/// Uniform grid `t_k = t_start + k·dt`, `k = 0..=n_steps`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    dt: f64,
    n_steps: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, dt: f64, n_steps: usize) -> Result<Self> {
        if !(t_start >= 0.0) || !t_start.is_finite() {
            return Err(Error::Invalid("t_start must be finite and >= 0".into()));
        }
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::Invalid("dt must be finite and > 0".into()));
        }
        if n_steps == 0 {
            return Err(Error::Invalid("n_steps must be positive".into()));
        }
        Ok(Self { t_start, dt, n_steps })
    }

    /// Grid on `[0, horizon]` with approximately the requested step.
    pub fn from_horizon(horizon: f64, dt: f64) -> Result<Self> {
        if !(horizon > 0.0) {
            return Err(Error::Invalid("horizon must be > 0".into()));
        }
        let n = (horizon / dt).round() as usize;
        Self::new(0.0, horizon / n.max(1) as f64, n.max(1))
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// Number of grid points, `n_steps + 1`.
    pub fn len(&self) -> usize {
        self.n_steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn t_max(&self) -> f64 {
        self.t_start + self.dt * self.n_steps as f64
    }

    pub fn point(&self, k: usize) -> f64 {
        self.t_start + self.dt * k as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|k| self.point(k))
    }

    /// Index of the first grid point with `t_k >= t`, clamped to the grid.
    pub fn index_at_or_after(&self, t: f64) -> usize {
        if t <= self.t_start {
            return 0;
        }
        let k = ((t - self.t_start) / self.dt).ceil() as usize;
        k.min(self.n_steps)
    }
}

/// Pointwise transform applied to a signal before averaging.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Abs,
    AbsSquared,
    Identity,
}

impl Transform {
    fn apply(self, z: C64) -> C64 {
        match self {
            Transform::Abs => C64::new(z.norm(), 0.0),
            Transform::AbsSquared => C64::new(z.norm_sqr(), 0.0),
            Transform::Identity => z,
        }
    }
}

/// A complex-valued function sampled on a uniform grid; the carrier of weak
/// orbits `t ↦ ⟨T(t)x, y⟩` and of everything averaged from them.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    grid: TimeGrid,
    values: Vec<C64>,
}

impl Signal {
    pub fn new(grid: TimeGrid, values: Vec<C64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Invalid("signal values must be finite".into()));
        }
        Ok(Self { grid, values })
    }

    /// Samples a scalar function on the grid.
    pub fn sample<F: FnMut(f64) -> C64>(grid: TimeGrid, mut f: F) -> Result<Self> {
        let values = grid.points().map(&mut f).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// Real parts of the values, used by real-signal diagnostics.
    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    pub fn abs(&self) -> Signal {
        Signal {
            grid: self.grid.clone(),
            values: self.values.iter().map(|z| C64::new(z.norm(), 0.0)).collect(),
        }
    }

    /// Largest modulus over grid indices `k0..len`.
    pub fn sup_abs_from(&self, k0: usize) -> f64 {
        self.values[k0.min(self.values.len() - 1)..]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Composite trapezoid approximation of `∫ s(t) dt` over the signal's grid.
///
/// Linear in the signal and additive over grid splits; exact for affine
/// integrands.
pub fn trapezoid_integral(s: &Signal) -> C64 {
    let dt = s.grid.dt();
    let v = &s.values;
    if v.len() == 1 {
        return C64::new(0.0, 0.0);
    }
    let mut acc = (v[0] + v[v.len() - 1]) * 0.5;
    for &z in &v[1..v.len() - 1] {
        acc += z;
    }
    acc * dt
}

/// Running Cesàro mean of a transformed signal.
///
/// The output at `t_k` is `(1/(t_k − t_start)) · ∫_{t_start}^{t_k} g(s) ds`
/// with `g = transform(signal)`; the `k = 0` value is defined as
/// `g(t_0)` (the `1/t` singularity is removed so the output is total on the
/// grid).
pub fn running_mean(s: &Signal, transform: Transform) -> Signal {
    let dt = s.grid.dt();
    let g: Vec<C64> = s.values.iter().map(|&z| transform.apply(z)).collect();
    let mut out = Vec::with_capacity(g.len());
    out.push(g[0]);
    let mut acc = C64::new(0.0, 0.0);
    for k in 1..g.len() {
        acc += (g[k - 1] + g[k]) * (0.5 * dt);
        let elapsed = dt * k as f64;
        out.push(acc / elapsed);
    }
    Signal {
        grid: s.grid.clone(),
        values: out,
    }
}

/// Mean of the last `fraction` of a real signal's running values
/// (e.g. `0.1` for the trailing 10% of the horizon).
pub fn trailing_mean(s: &Signal, fraction: f64) -> f64 {
    let n = s.values.len();
    let k0 = ((1.0 - fraction) * (n - 1) as f64).floor() as usize;
    let tail = &s.values[k0.min(n - 1)..];
    tail.iter().map(|z| z.re).fold(0.0, |a, b| a + b) / tail.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{E, PI};

    #[test]
    fn grid_points_strictly_increasing() {
        let g = TimeGrid::new(0.5, 0.25, 4).unwrap();
        assert_eq!(g.len(), 5);
        assert!((g.t_max() - 1.5).abs() < 1e-15);
        let pts: Vec<f64> = g.points().collect();
        assert!(pts.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn grid_rejects_bad_parameters() {
        assert!(TimeGrid::new(-1.0, 0.1, 10).is_err());
        assert!(TimeGrid::new(0.0, 0.0, 10).is_err());
        assert!(TimeGrid::new(0.0, 0.1, 0).is_err());
    }

    #[test]
    fn trapezoid_constant_and_affine_exact() {
        let g = TimeGrid::new(0.0, 0.1, 10).unwrap();
        let one = Signal::sample(g.clone(), |_| C64::new(1.0, 0.0)).unwrap();
        assert!((trapezoid_integral(&one).re - 1.0).abs() < 1e-15);

        let g = TimeGrid::new(0.0, 0.01, 100).unwrap();
        let ramp = Signal::sample(g, |t| C64::new(t, 0.0)).unwrap();
        assert!((trapezoid_integral(&ramp).re - 0.5).abs() < 1e-14);
    }

    #[test]
    fn trapezoid_exponential_decay() {
        let g = TimeGrid::new(0.0, 0.001, 10_000).unwrap();
        let s = Signal::sample(g, |t| C64::new((-t).exp(), 0.0)).unwrap();
        let expect = 1.0 - (-10.0f64).exp();
        assert!((trapezoid_integral(&s).re - expect).abs() < 1e-6);
    }

    #[test]
    fn trapezoid_additive_over_splits() {
        let g = TimeGrid::new(0.0, 0.01, 200).unwrap();
        let f = |t: f64| C64::new((2.0 * t).sin(), t.cos());
        let whole = trapezoid_integral(&Signal::sample(g, f).unwrap());
        let left =
            trapezoid_integral(&Signal::sample(TimeGrid::new(0.0, 0.01, 100).unwrap(), f).unwrap());
        let right =
            trapezoid_integral(&Signal::sample(TimeGrid::new(1.0, 0.01, 100).unwrap(), f).unwrap());
        assert!((whole - left - right).norm() < 1e-13);
    }

    #[test]
    fn running_mean_of_constant() {
        let g = TimeGrid::new(0.0, 0.1, 50).unwrap();
        let s = Signal::sample(g, |_| C64::new(-2.0, 0.0)).unwrap();
        let m = running_mean(&s, Transform::Abs);
        assert!(m.values().iter().all(|z| (z.re - 2.0).abs() < 1e-13));
    }

    #[test]
    fn running_mean_exponential_closed_form() {
        let g = TimeGrid::new(0.0, 0.001, 10_000).unwrap();
        let s = Signal::sample(g, |t| C64::new((-t).exp(), 0.0)).unwrap();
        let m = running_mean(&s, Transform::Abs);
        let at_ten = m.values()[10_000].re;
        let expect = (1.0 - (-10.0f64).exp()) / 10.0;
        assert!((at_ten - expect).abs() < 1e-7, "got {at_ten}");
    }

    #[test]
    fn running_mean_abs_cos_tends_to_two_over_pi() {
        // mean of |cos| over whole periods is 2/π; t = 100π lies on the grid.
        let n = 100_000;
        let dt = 100.0 * PI / n as f64;
        let g = TimeGrid::new(0.0, dt, n).unwrap();
        let s = Signal::sample(g, |t| C64::new(t.cos(), 0.0)).unwrap();
        let m = running_mean(&s, Transform::Abs);
        assert!((m.values()[n].re - 2.0 / PI).abs() < 1e-4);
    }

    #[test]
    fn running_mean_bounded_by_supremum() {
        let g = TimeGrid::new(0.0, 0.05, 400).unwrap();
        let s = Signal::sample(g, |t| C64::new((3.0 * t).sin().abs() + 0.1, 0.0)).unwrap();
        let sup = s.values().iter().map(|z| z.re).fold(0.0, f64::max);
        let m = running_mean(&s, Transform::Abs);
        assert!(m.values().iter().all(|z| z.re >= 0.0 && z.re <= sup + 1e-12));
    }

    #[test]
    fn trapezoid_linear_in_signal() {
        let g = TimeGrid::new(0.0, 0.02, 150).unwrap();
        let a = Signal::sample(g.clone(), |t| C64::new(t.sin(), t * t)).unwrap();
        let b = Signal::sample(g.clone(), |t| C64::new((1.0 + t).ln(), -t)).unwrap();
        let sum = Signal::new(
            g,
            a.values()
                .iter()
                .zip(b.values())
                .map(|(&x, &y)| x * 2.0 + y * C64::new(0.0, 3.0))
                .collect(),
        )
        .unwrap();
        let lhs = trapezoid_integral(&sum);
        let rhs = trapezoid_integral(&a) * 2.0 + trapezoid_integral(&b) * C64::new(0.0, 3.0);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn exp_constant_sanity() {
        assert!((E.ln() - 1.0).abs() < 1e-15);
    }
}
