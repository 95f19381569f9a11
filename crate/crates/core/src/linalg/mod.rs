//! Dense complex linear algebra sized for the laboratory.
//!
//! Generators here are small (a handful of rows), so everything is direct
//! and dense: partial-pivot LU, Householder Hessenberg reduction, a shifted
//! QR iteration producing a complex Schur form with ordered invariant
//! subspaces, a one-sided Jacobi SVD for rank decisions, and the
//! scaling-and-squaring Padé(13) matrix exponential. The crate stays
//! `no_std`-compatible, which is why these kernels are local rather than
//! delegated to a LAPACK binding.

mod dense;
mod expm;
mod lu;
mod schur;
mod svd;

pub use dense::CMat;
pub use expm::expm;
pub use lu::Lu;
pub use schur::{ordered_schur_split, schur, spectral_projector, Schur, SchurSplit};
pub use svd::{null_space, op_norm_2, orthonormal_range, principal_angle, subspace_intersection, Svd};
