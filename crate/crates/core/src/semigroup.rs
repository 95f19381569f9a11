//! The evaluation contract shared by the vector-state backends.

#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::error::Result;
use crate::grid::{Signal, TimeGrid};
use crate::vector::ComplexVector;
use crate::C64;

/// Static facts a backend declares about itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Capabilities {
    pub has_resolvent_closed_form: bool,
    pub is_contractive_claimed: bool,
    pub adjoint_available: bool,
    /// Group evaluation (negative times) supported.
    pub group_available: bool,
    /// Tolerance within which the backend promises the semigroup law
    /// `apply(t+s, x) ≈ apply(t, apply(s, x))` relative to `‖x‖`.
    pub law_tolerance: f64,
}

/// A strongly continuous semigroup evaluated pointwise in time.
///
/// `apply(0, x) = x` exactly, and the semigroup law holds within
/// [`Capabilities::law_tolerance`]. Implementations are immutable and safe to
/// share across threads.
pub trait SemigroupEvaluator {
    fn dim(&self) -> usize;

    fn capabilities(&self) -> Capabilities;

    /// Evolves the state: `x ↦ T(t) x`.
    fn apply(&self, t: f64, x: &ComplexVector) -> Result<ComplexVector>;

    /// The backend's inner product (Euclidean for matrix backends, the
    /// measure-weighted pairing for multiplication backends).
    fn pair(&self, x: &ComplexVector, y: &ComplexVector) -> Result<C64>;

    /// Norm induced by [`SemigroupEvaluator::pair`].
    fn state_norm(&self, x: &ComplexVector) -> Result<f64> {
        Ok(self.pair(x, x)?.re.max(0.0).sqrt())
    }

    /// Weak orbit `t ↦ ⟨T(t)x, y⟩` sampled on a grid. The default walks the
    /// grid point by point; backends override with stepped evaluation.
    fn weak_orbit(&self, x: &ComplexVector, y: &ComplexVector, grid: &TimeGrid) -> Result<Signal> {
        let mut values = alloc::vec::Vec::with_capacity(grid.len());
        for t in grid.points() {
            let evolved = self.apply(t, x)?;
            values.push(self.pair(&evolved, y)?);
        }
        Signal::new(grid.clone(), values)
    }
}
