//! The three semigroup realizations and the structural decompositions.

mod cogenerator;
mod foguel;
mod koopman;
mod matrix;
mod multiplication;
mod spectral;

pub use cogenerator::{cayley_image, cogenerator_of, Cogenerator};
pub use foguel::{foguel_split, FoguelSplit};
pub use koopman::{Flow, FlowField, Functional, KoopmanSemigroup, Observable};
pub use matrix::{BoundednessCertificate, MatrixGenerator, MatrixSemigroup, DEFAULT_TOL_IM};
pub use multiplication::MultiplicationSemigroup;
pub use spectral::{jgdl_split, mean_ergodic_projection, JgdlSplit, MeanErgodicReport};

use crate::error::{Error, Result};
use crate::grid::{Signal, TimeGrid};
use crate::semigroup::SemigroupEvaluator;
use crate::vector::ComplexVector;

/// Any of the three backends, as handed to the orbit-level diagnostics.
#[derive(Debug, Clone)]
pub enum Backend {
    Matrix(MatrixSemigroup),
    Multiplication(MultiplicationSemigroup),
    Koopman(KoopmanSemigroup),
}

/// One observation: a state/functional pair for the vector backends, an
/// observable against a point (or empirical-measure) functional for the
/// Koopman backend.
#[derive(Debug, Clone)]
pub enum ObservationPair {
    Vectors { x: ComplexVector, y: ComplexVector },
    Koopman { observable: Observable, functional: Functional },
}

impl Backend {
    /// Weak orbit `t ↦ ⟨T(t)x, y⟩` of the observation pair on the grid.
    pub fn weak_orbit(&self, pair: &ObservationPair, grid: &TimeGrid) -> Result<Signal> {
        match (self, pair) {
            (Backend::Matrix(ms), ObservationPair::Vectors { x, y }) => ms.weak_orbit(x, y, grid),
            (Backend::Multiplication(ms), ObservationPair::Vectors { x, y }) => {
                ms.weak_orbit(x, y, grid)
            }
            (Backend::Koopman(ks), ObservationPair::Koopman { observable, functional }) => {
                ks.weak_orbit(observable, functional, grid)
            }
            _ => Err(Error::Unsupported(
                "observation pair kind does not match backend".into(),
            )),
        }
    }

    /// The vector-backend evaluator, when this backend is one.
    pub fn as_evaluator(&self) -> Option<&dyn SemigroupEvaluator> {
        match self {
            Backend::Matrix(ms) => Some(ms),
            Backend::Multiplication(ms) => Some(ms),
            Backend::Koopman(_) => None,
        }
    }

    /// Normalizes a pair to unit norm in the backend's own inner product, so
    /// every orbit criterion is homogeneous. Koopman pairs pass through.
    pub fn normalized_pair(&self, pair: &ObservationPair) -> Result<ObservationPair> {
        match (self.as_evaluator(), pair) {
            (Some(ev), ObservationPair::Vectors { x, y }) => {
                let nx = ev.state_norm(x)?;
                let ny = ev.state_norm(y)?;
                if nx <= 0.0 || ny <= 0.0 {
                    return Err(Error::Invalid("cannot normalize a zero vector".into()));
                }
                Ok(ObservationPair::Vectors {
                    x: x.scaled(crate::C64::new(1.0 / nx, 0.0)),
                    y: y.scaled(crate::C64::new(1.0 / ny, 0.0)),
                })
            }
            _ => Ok(pair.clone()),
        }
    }
}
