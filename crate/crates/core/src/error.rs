//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of the laboratory.
///
/// Numerical routines distinguish between contract violations
/// ([`Error::Invalid`], [`Error::DimensionMismatch`]) and genuine numerical
/// breakdowns ([`Error::Singular`], [`Error::NoConvergence`],
/// [`Error::IntegratorFailure`]).
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand dimensions disagree.
    DimensionMismatch { expected: usize, got: usize },
    /// A precondition on the inputs is violated.
    Invalid(String),
    /// A linear solve hit a (numerically) singular matrix.
    Singular(String),
    /// An iterative routine exhausted its iteration budget.
    NoConvergence(String),
    /// The ODE integrator produced a non-finite state.
    IntegratorFailure(String),
    /// The requested operation is not supported by this backend.
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
            Error::Singular(msg) => write!(f, "singular system: {msg}"),
            Error::NoConvergence(msg) => write!(f, "no convergence: {msg}"),
            Error::IntegratorFailure(msg) => write!(f, "integrator failure: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported operation: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
