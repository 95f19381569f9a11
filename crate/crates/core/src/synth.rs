//! Reproducible instance synthesis: random unitaries, planted generators.
//!
//! The instance library behind the randomized checks. Every generator is
//! planted with known ground truth (spectrum, invariant subspaces) so the
//! decompositions and resolvent functionals can be verified against an
//! independent construction oracle.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::linalg::CMat;
use crate::rng::SplitMix64;
use crate::vector::ComplexVector;
use crate::C64;

/// Haar-ish random unitary: Gaussian matrix orthonormalized by twice-applied
/// modified Gram–Schmidt (re-orthogonalization keeps columns orthonormal to
/// machine precision at these sizes).
pub fn random_unitary(rng: &mut SplitMix64, n: usize) -> CMat {
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.normal_c64()).collect())
        .collect();
    for _pass in 0..2 {
        for j in 0..n {
            for k in 0..j {
                let mut dot = C64::new(0.0, 0.0);
                for i in 0..n {
                    dot += cols[k][i].conj() * cols[j][i];
                }
                for i in 0..n {
                    let c = cols[k][i];
                    cols[j][i] -= dot * c;
                }
            }
            let norm = cols[j]
                .iter()
                .map(|z| z.norm_sqr())
                .fold(0.0, |a, b| a + b)
                .sqrt();
            for z in cols[j].iter_mut() {
                *z /= norm;
            }
        }
    }
    CMat::from_fn(n, n, |i, j| cols[j][i])
}

/// Random state with unit Euclidean norm.
pub fn random_unit_vector(rng: &mut SplitMix64, n: usize) -> ComplexVector {
    loop {
        let entries: Vec<C64> = (0..n).map(|_| rng.normal_c64()).collect();
        let norm = entries.iter().map(|z| z.norm_sqr()).fold(0.0, |a, b| a + b).sqrt();
        if norm > 1e-6 {
            let v: Vec<C64> = entries.into_iter().map(|z| z / norm).collect();
            return ComplexVector::new(v).expect("finite by construction");
        }
    }
}

/// `U diag(λ) U*` for a random unitary `U`.
pub fn unitary_conjugated_diag(rng: &mut SplitMix64, diag: &[C64]) -> (CMat, CMat) {
    let u = random_unitary(rng, diag.len());
    let a = u.mul(&CMat::diag(diag)).mul(&u.adjoint());
    (a, u)
}

/// Random normal generator with spectrum in `{Re λ ∈ [re_lo, re_hi]}`,
/// imaginary parts in `[-im_max, im_max]`.
pub fn random_stable_generator(
    rng: &mut SplitMix64,
    n: usize,
    re_lo: f64,
    re_hi: f64,
    im_max: f64,
) -> CMat {
    let diag: Vec<C64> = (0..n)
        .map(|_| C64::new(rng.uniform_in(re_lo, re_hi), rng.uniform_in(-im_max, im_max)))
        .collect();
    unitary_conjugated_diag(rng, &diag).0
}

/// Stable generator with exactly one planted semisimple purely imaginary
/// eigenvalue `i·omega`; returns `(A, omega)`.
pub fn seeded_imaginary_generator(
    rng: &mut SplitMix64,
    n: usize,
    re_lo: f64,
    re_hi: f64,
    im_max: f64,
) -> (CMat, f64) {
    let omega = rng.uniform_in(-im_max, im_max);
    let mut diag: Vec<C64> = vec![C64::new(0.0, omega)];
    for _ in 1..n {
        diag.push(C64::new(rng.uniform_in(re_lo, re_hi), rng.uniform_in(-im_max, im_max)));
    }
    (unitary_conjugated_diag(rng, &diag).0, omega)
}

/// Planted Foguel instance: `A = U (diag(iω₁..iω_k) ⊕ S) U*` with a stable
/// block whose spectrum has real parts at most `-gap`. Returns the
/// generator, the planted unitary-part basis (first `k` columns of `U`) and
/// the planted stable-part basis (the remaining columns).
pub fn foguel_instance(rng: &mut SplitMix64, n: usize, k: usize, gap: f64) -> (CMat, CMat, CMat) {
    assert!(k < n, "need a nontrivial stable block");
    let mut diag: Vec<C64> = (0..k)
        .map(|_| C64::new(0.0, rng.uniform_in(-2.0, 2.0)))
        .collect();
    for _ in k..n {
        diag.push(C64::new(
            -rng.uniform_in(gap, gap + 1.0),
            rng.uniform_in(-2.0, 2.0),
        ));
    }
    let u = random_unitary(rng, n);
    let a = u.mul(&CMat::diag(&diag)).mul(&u.adjoint());
    let unitary_basis = u.block(0, n, 0, k);
    let stable_basis = u.block(0, n, k, n);
    (a, unitary_basis, stable_basis)
}

/// Random contractive generator `U (diag(iω) ⊕ S) U*` mixing a unitary part
/// of dimension `k` with a strictly dissipative block; `A + A* ⪯ 0` by
/// construction.
pub fn random_contractive_generator(rng: &mut SplitMix64, n: usize, k: usize) -> CMat {
    let mut diag: Vec<C64> = (0..k)
        .map(|_| C64::new(0.0, rng.uniform_in(-2.0, 2.0)))
        .collect();
    for _ in k..n {
        diag.push(C64::new(
            -rng.uniform_in(0.3, 1.5),
            rng.uniform_in(-2.0, 2.0),
        ));
    }
    unitary_conjugated_diag(rng, &diag).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = SplitMix64::new(17);
        for n in [1usize, 2, 5, 8] {
            let u = random_unitary(&mut rng, n);
            let res = u.adjoint().mul(&u).sub(&CMat::identity(n)).max_abs();
            assert!(res < 1e-13, "n={n}: residual {res}");
        }
    }

    #[test]
    fn contractive_generator_has_dissipative_hermitian_part() {
        let mut rng = SplitMix64::new(29);
        for _ in 0..5 {
            let a = random_contractive_generator(&mut rng, 5, 2);
            let herm = a.hermitian_part();
            let eigs = crate::linalg::schur(&herm).unwrap().eigenvalues();
            for e in eigs {
                assert!(e.re < 1e-10, "hermitian part eigenvalue {e}");
            }
        }
    }
}
