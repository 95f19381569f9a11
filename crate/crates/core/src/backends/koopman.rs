//! Koopman semigroups from ODE flows: `(T(t)f)(x) = f(φ_t(x))`.
//!
//! No operator is materialized; the backend exposes weak orbits of an
//! observable against point functionals `δ_{x₀}` (or finite empirical
//! measures), which is exactly `t ↦ f(φ_t(x₀))`. Trajectories come from a
//! fixed-step classical RK4 integrator with a step-doubling error estimate.
//!
//! Built-in flows:
//!
//! * `TorusRotation { alpha }` — `ẋ = α` on ℝ/ℤ, the isometric model flow;
//! * `Homoclinic` — the planar flow in polar coordinates
//!   `ṙ = 1 − r`, `ω̇ = 1 + r² − 2r cos ω`, whose unit circle carries a
//!   homoclinic loop through the equilibrium `(r, ω) = (1, 0)`; the radial
//!   part decouples with closed form `r(t) = 1 + (r₀ − 1)e^{−t}`, used to
//!   validate the integrator.

use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::{Signal, TimeGrid};
use crate::C64;

const TWO_PI: f64 = core::f64::consts::TAU;

/// Built-in vector fields. `Custom` accepts a plain function pointer
/// `(state, velocity_out)` so the library stays extensible without closures.
#[derive(Debug, Clone, Copy)]
pub enum FlowField {
    Homoclinic,
    TorusRotation { alpha: f64 },
    Custom { dim: usize, field: fn(&[f64], &mut [f64]) },
}

impl FlowField {
    pub fn dim(&self) -> usize {
        match self {
            FlowField::Homoclinic => 2,
            FlowField::TorusRotation { .. } => 1,
            FlowField::Custom { dim, .. } => *dim,
        }
    }

    fn velocity(&self, state: &[f64], out: &mut [f64]) {
        match self {
            FlowField::Homoclinic => {
                let (r, w) = (state[0], state[1]);
                out[0] = 1.0 - r;
                out[1] = 1.0 + r * r - 2.0 * r * w.cos();
            }
            FlowField::TorusRotation { alpha } => out[0] = *alpha,
            FlowField::Custom { field, .. } => field(state, out),
        }
    }
}

/// A flow plus its integrator configuration.
#[derive(Debug, Clone, Copy)]
pub struct Flow {
    pub field: FlowField,
    /// RK4 step size.
    pub h: f64,
}

impl Flow {
    pub fn new(field: FlowField, h: f64) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Invalid("step size must be finite and > 0".into()));
        }
        Ok(Self { field, h })
    }

    pub fn homoclinic(h: f64) -> Result<Self> {
        Self::new(FlowField::Homoclinic, h)
    }

    pub fn torus_rotation(alpha: f64, h: f64) -> Result<Self> {
        Self::new(FlowField::TorusRotation { alpha }, h)
    }

    pub fn dim(&self) -> usize {
        self.field.dim()
    }

    fn rk4_step(&self, state: &mut [f64], h: f64, scratch: &mut [f64]) {
        let n = state.len();
        let (k1, rest) = scratch.split_at_mut(n);
        let (k2, rest) = rest.split_at_mut(n);
        let (k3, rest) = rest.split_at_mut(n);
        let (k4, tmp) = rest.split_at_mut(n);

        self.field.velocity(state, k1);
        for i in 0..n {
            tmp[i] = state[i] + 0.5 * h * k1[i];
        }
        self.field.velocity(tmp, k2);
        for i in 0..n {
            tmp[i] = state[i] + 0.5 * h * k2[i];
        }
        self.field.velocity(tmp, k3);
        for i in 0..n {
            tmp[i] = state[i] + h * k3[i];
        }
        self.field.velocity(tmp, k4);
        for i in 0..n {
            state[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }

    fn check_finite(&self, state: &[f64], t: f64) -> Result<()> {
        if state.iter().any(|v| !v.is_finite()) {
            return Err(Error::IntegratorFailure(alloc::format!(
                "non-finite state near t = {t}; reduce the step size"
            )));
        }
        Ok(())
    }

    /// Integrates from `x0` to time `t ≥ 0`.
    pub fn integrate(&self, x0: &[f64], t: f64) -> Result<Vec<f64>> {
        if x0.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x0.len(),
            });
        }
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::Invalid("time must be finite and >= 0".into()));
        }
        let n = self.dim();
        let mut state = x0.to_vec();
        let mut scratch = alloc::vec![0.0; 5 * n];
        let steps = (t / self.h).floor() as u64;
        for k in 0..steps {
            self.rk4_step(&mut state, self.h, &mut scratch);
            if k.is_multiple_of(1024) {
                self.check_finite(&state, k as f64 * self.h)?;
            }
        }
        let rem = t - steps as f64 * self.h;
        if rem > 1e-14 * t.max(1.0) {
            self.rk4_step(&mut state, rem, &mut scratch);
        }
        self.check_finite(&state, t)?;
        Ok(state)
    }

    /// Integrates and estimates the local error by step doubling:
    /// `err ≈ ‖x_h − x_{h/2}‖ / 15` over the whole interval.
    pub fn integrate_with_error(&self, x0: &[f64], t: f64) -> Result<(Vec<f64>, f64)> {
        let coarse = self.integrate(x0, t)?;
        let halved = Flow {
            field: self.field,
            h: self.h / 2.0,
        };
        let fine = halved.integrate(x0, t)?;
        let err = coarse
            .iter()
            .zip(&fine)
            .map(|(a, b)| (a - b) * (a - b))
            .fold(0.0, |x, y| x + y)
            .sqrt()
            / 15.0;
        Ok((fine, err))
    }

    /// States sampled at the grid points of a trajectory from `x0`,
    /// stepping with `h` and landing exactly on each grid time.
    pub fn trajectory_samples(&self, x0: &[f64], grid: &TimeGrid) -> Result<Vec<Vec<f64>>> {
        if x0.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x0.len(),
            });
        }
        let n = self.dim();
        let mut scratch = alloc::vec![0.0; 5 * n];
        let mut state = if grid.t_start() > 0.0 {
            self.integrate(x0, grid.t_start())?
        } else {
            x0.to_vec()
        };
        let mut out = Vec::with_capacity(grid.len());
        out.push(state.clone());
        let dt = grid.dt();
        let sub = (dt / self.h).ceil().max(1.0) as usize;
        let h_sub = dt / sub as f64;
        for k in 0..grid.n_steps() {
            for _ in 0..sub {
                self.rk4_step(&mut state, h_sub, &mut scratch);
            }
            self.check_finite(&state, grid.point(k + 1))?;
            out.push(state.clone());
        }
        Ok(out)
    }
}

/// Scalar observables over flow states.
#[derive(Debug, Clone, Copy)]
pub enum Observable {
    /// `r` coordinate of a polar-state flow.
    Radial,
    /// `ω` coordinate of a polar-state flow.
    Angle,
    /// `e^{2πi k x}` on the torus.
    FourierMode { k: i32 },
    /// Smooth bump concentrated at angle `center` on the unit circle, with
    /// angular half-width `width` and radial half-width `radial_width`;
    /// vanishes at the circle equilibrium whenever the support excludes
    /// angle 0.
    CircleBump {
        center: f64,
        width: f64,
        radial_width: f64,
    },
    /// Indicator-style coordinate projection.
    Coordinate { index: usize },
}

/// `exp(1 − 1/(1−u²))` on `|u| < 1`, else 0: a smooth compactly supported
/// bump with `b(0) = 1`.
fn bump(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - u * u)).exp()
    }
}

fn wrap_angle(x: f64) -> f64 {
    let mut a = x % TWO_PI;
    if a > core::f64::consts::PI {
        a -= TWO_PI;
    } else if a < -core::f64::consts::PI {
        a += TWO_PI;
    }
    a
}

impl Observable {
    pub fn eval(&self, state: &[f64]) -> C64 {
        match self {
            Observable::Radial => C64::new(state[0], 0.0),
            Observable::Angle => C64::new(state[1], 0.0),
            Observable::FourierMode { k } => {
                C64::from_polar(1.0, TWO_PI * *k as f64 * state[0])
            }
            Observable::CircleBump {
                center,
                width,
                radial_width,
            } => {
                let angle_dist = wrap_angle(state[1] - center);
                let val = bump(angle_dist / width) * bump((state[0] - 1.0) / radial_width);
                C64::new(val, 0.0)
            }
            Observable::Coordinate { index } => C64::new(state[*index], 0.0),
        }
    }
}

/// Observation functionals: a Dirac point mass or a finite empirical
/// measure over initial states.
#[derive(Debug, Clone)]
pub enum Functional {
    Point(Vec<f64>),
    Empirical(Vec<(Vec<f64>, f64)>),
}

/// Koopman backend: orbits only, no materialized operator.
#[derive(Debug, Clone)]
pub struct KoopmanSemigroup {
    flow: Flow,
}

impl KoopmanSemigroup {
    pub fn new(flow: Flow) -> Self {
        Self { flow }
    }

    pub fn flow(&self) -> &Flow {
        &self.flow
    }

    /// `f(φ_t(x₀))` — the weak orbit of `f` against `δ_{x₀}` at a single time.
    pub fn observe(&self, t: f64, observable: &Observable, x0: &[f64]) -> Result<C64> {
        let state = self.flow.integrate(x0, t)?;
        Ok(observable.eval(&state))
    }

    /// Scalar resolvent through Laplace quadrature of the weak orbit:
    /// `⟨R(λ)f, φ⟩ ≈ ∫₀^{t_max} e^{−λt} ⟨T(t)f, φ⟩ dt`, with the reported
    /// tail bound. The only resolvent mode for this backend, restricted to
    /// `Re λ ≥ 0.1` so the truncation tail is controlled by the boundedness
    /// of the orbit alone.
    pub fn laplace_orbit_resolvent(
        &self,
        observable: &Observable,
        functional: &Functional,
        lambda: C64,
        t_max: f64,
        dt: f64,
    ) -> Result<(C64, f64)> {
        if lambda.re < 0.1 {
            return Err(Error::Unsupported(
                "orbit-only backend: Laplace-quadrature resolvent needs Re λ ≥ 0.1".into(),
            ));
        }
        let n = ((t_max / dt).ceil() as usize).max(8);
        let grid = TimeGrid::new(0.0, t_max / n as f64, n)?;
        let orbit = self.weak_orbit(observable, functional, &grid)?;
        crate::resolvent::laplace_resolvent_of_signal(&orbit, lambda)
    }

    /// Weak orbit of `observable` against the functional on a grid.
    pub fn weak_orbit(
        &self,
        observable: &Observable,
        functional: &Functional,
        grid: &TimeGrid,
    ) -> Result<Signal> {
        match functional {
            Functional::Point(x0) => {
                let states = self.flow.trajectory_samples(x0, grid)?;
                let values = states.iter().map(|s| observable.eval(s)).collect();
                Signal::new(grid.clone(), values)
            }
            Functional::Empirical(points) => {
                if points.is_empty() {
                    return Err(Error::Invalid("empirical functional needs points".into()));
                }
                let mut acc = alloc::vec![C64::new(0.0, 0.0); grid.len()];
                for (x0, w) in points {
                    let states = self.flow.trajectory_samples(x0, grid)?;
                    for (a, s) in acc.iter_mut().zip(&states) {
                        *a += observable.eval(s) * *w;
                    }
                }
                Signal::new(grid.clone(), acc)
            }
        }
    }
}
