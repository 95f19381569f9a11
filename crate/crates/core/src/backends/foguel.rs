//! Foguel decomposition of a contractive matrix semigroup.
//!
//! For a contraction semigroup on a Hilbert space, the state space splits as
//! `H = W ⊕ W⊥` where `W = {x : ⟨T(t)x, x⟩ → 0}` carries the weakly stable
//! part and `W⊥` the maximal subspace on which the semigroup is unitary. In
//! finite dimensions `W⊥` is the largest subspace invariant under both `A`
//! and `A*` on which `A + A* = 0`; it is computed by the monotone fixed-point
//! iteration
//!
//! ```text
//! K₀    = ker(A + A*)
//! K_{n+1} = K_n ∩ A⁻¹K_n ∩ (A*)⁻¹K_n
//! ```
//!
//! which terminates because the dimension strictly decreases until stable
//! (at most `dim` steps). Preimages and intersections are rank-revealing
//! kernel computations with a fixed singular-value cutoff.

#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{null_space, schur, subspace_intersection, CMat};
use crate::C64;

use super::matrix::MatrixGenerator;

/// Singular-value cutoff used by every kernel/intersection step.
const RANK_TOL: f64 = 1e-10;

/// The weakly stable / unitary splitting.
#[derive(Debug, Clone)]
pub struct FoguelSplit {
    /// Orthonormal basis of the weakly stable part `W` (diagonal weak
    /// orbits decay).
    pub w: CMat,
    /// Orthonormal basis of the maximal unitary part `W⊥`.
    pub w_perp: CMat,
    /// Largest eigenvalue of `(A + A*)/2` found during the contractivity
    /// check.
    pub dissipativity: f64,
    /// Iterations until the subspace stabilized.
    pub iterations: usize,
}

/// Computes the Foguel splitting; requires a contractive generator
/// (`A + A* ⪯ 0` within tolerance).
pub fn foguel_split(gen: &MatrixGenerator) -> Result<FoguelSplit> {
    let n = gen.dim();
    let a = gen.matrix();
    let herm = a.hermitian_part();
    let dissipativity = schur(&herm)?
        .eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let tol = 1e-9 * gen.scale().max(1.0);
    if dissipativity > tol {
        return Err(Error::Invalid(alloc::format!(
            "generator is not contractive: max eig of (A+A*)/2 = {dissipativity:.3e}"
        )));
    }

    let scale = gen.scale().max(1.0);
    let a_scaled = a.scale(C64::new(1.0 / scale, 0.0));
    let a_star_scaled = a_scaled.adjoint();

    let mut k = null_space(&herm.scale(C64::new(1.0 / scale, 0.0)), RANK_TOL)?;
    let mut iterations = 0usize;
    while k.cols() > 0 && iterations <= n {
        iterations += 1;
        // {x ∈ span K : Ax ∈ span K, A*x ∈ span K}
        let proj_out = CMat::identity(n).sub(&k.mul(&k.adjoint()));
        let m1 = proj_out.mul(&a_scaled);
        let m2 = proj_out.mul(&a_star_scaled);
        let ker1 = null_space(&m1, RANK_TOL)?;
        let ker2 = null_space(&m2, RANK_TOL)?;
        if ker1.cols() == 0 || ker2.cols() == 0 {
            k = CMat::zeros(n, 0);
            break;
        }
        let next = subspace_intersection(&[k.clone(), ker1, ker2], n, RANK_TOL)?;
        if next.cols() == k.cols() {
            k = next;
            break;
        }
        k = next;
    }

    let w_perp = k;
    let w = if w_perp.cols() == 0 {
        CMat::identity(n)
    } else {
        // orthogonal complement: ker(K*)
        null_space(&w_perp.adjoint(), RANK_TOL)?
    };
    Ok(FoguelSplit {
        w,
        w_perp,
        dissipativity,
        iterations,
    })
}
