//! One-sided Jacobi SVD and the subspace utilities built on it.
//!
//! Rank decisions (null spaces, range bases, subspace intersections,
//! principal angles) all route through the SVD so there is exactly one
//! rank-tolerance convention in the crate.

use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::C64;

use super::dense::CMat;

/// Thin SVD `A = U Σ V*`; `u` is m×n (for m ≥ n), `v` is n×n, singular
/// values descending. Columns of `u` for zero singular values are zero.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMat,
    pub s: Vec<f64>,
    pub v: CMat,
}

impl Svd {
    pub fn compute(a: &CMat) -> Result<Svd> {
        if a.rows() < a.cols() {
            let t = Svd::compute(&a.adjoint())?;
            return Ok(Svd {
                u: t.v,
                s: t.s,
                v: t.u,
            });
        }
        let m = a.rows();
        let n = a.cols();
        let mut w = a.clone();
        let mut v = CMat::identity(n);
        let eps = f64::EPSILON;
        // columns whose norm has collapsed to roundoff are already converged
        let floor = (eps * a.norm_fro()).max(f64::MIN_POSITIVE);
        let floor_sqr = floor * floor;

        let mut converged = false;
        for _sweep in 0..60 {
            let mut max_off = 0.0f64;
            for p in 0..n {
                for q in p + 1..n {
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut g = C64::new(0.0, 0.0);
                    for i in 0..m {
                        let ap = w[(i, p)];
                        let aq = w[(i, q)];
                        alpha += ap.norm_sqr();
                        beta += aq.norm_sqr();
                        g += ap.conj() * aq;
                    }
                    let gn = g.norm();
                    let denom = (alpha * beta).sqrt();
                    if alpha <= floor_sqr || beta <= floor_sqr || gn <= eps * denom {
                        continue;
                    }
                    max_off = max_off.max(gn / denom);
                    let phase = g / gn;
                    let tau = (beta - alpha) / (2.0 * gn);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // columns ← [a_p, a_q] · [[c, s],[−s e^{−iφ}, c e^{−iφ}]]
                    let sp = phase.conj() * s;
                    let cp = phase.conj() * c;
                    for i in 0..m {
                        let ap = w[(i, p)];
                        let aq = w[(i, q)];
                        w[(i, p)] = ap * c - aq * sp;
                        w[(i, q)] = ap * s + aq * cp;
                    }
                    for i in 0..n {
                        let vp = v[(i, p)];
                        let vq = v[(i, q)];
                        v[(i, p)] = vp * c - vq * sp;
                        v[(i, q)] = vp * s + vq * cp;
                    }
                }
            }
            if max_off <= eps * 4.0 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence("Jacobi SVD sweep limit".into()));
        }

        let mut order: Vec<usize> = (0..n).collect();
        let norms: Vec<f64> = (0..n)
            .map(|j| {
                (0..m)
                    .map(|i| w[(i, j)].norm_sqr())
                    .fold(0.0, |a, b| a + b)
                    .sqrt()
            })
            .collect();
        order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap());

        let mut u = CMat::zeros(m, n);
        let mut vv = CMat::zeros(n, n);
        let mut s = Vec::with_capacity(n);
        for (jj, &j) in order.iter().enumerate() {
            let sigma = norms[j];
            s.push(sigma);
            if sigma > 0.0 {
                for i in 0..m {
                    u[(i, jj)] = w[(i, j)] / sigma;
                }
            }
            for i in 0..n {
                vv[(i, jj)] = v[(i, j)];
            }
        }
        Ok(Svd { u, s, v: vv })
    }

    pub fn rank(&self, rel_tol: f64) -> usize {
        let cutoff = self.s.first().copied().unwrap_or(0.0) * rel_tol;
        self.s.iter().filter(|&&x| x > cutoff).count()
    }
}

/// Orthonormal basis of `ker A` (columns), with singular values below
/// `rel_tol · σ_max` treated as zero. May have zero columns (trivial kernel).
pub fn null_space(a: &CMat, rel_tol: f64) -> Result<CMat> {
    let n = a.cols();
    // wide input: pad with zero rows so the Jacobi V spans the full domain
    let svd = if a.rows() < n {
        let mut padded = CMat::zeros(n, n);
        for i in 0..a.rows() {
            for j in 0..n {
                padded[(i, j)] = a[(i, j)];
            }
        }
        Svd::compute(&padded)?
    } else {
        Svd::compute(a)?
    };
    let rank = svd.rank(rel_tol);
    Ok(svd.v.block(0, n, rank, n))
}

/// Orthonormal basis of the column space.
pub fn orthonormal_range(a: &CMat, rel_tol: f64) -> Result<CMat> {
    let svd = Svd::compute(a)?;
    let rank = svd.rank(rel_tol);
    Ok(svd.u.block(0, a.rows(), 0, rank))
}

/// Operator 2-norm (largest singular value).
pub fn op_norm_2(a: &CMat) -> Result<f64> {
    Ok(Svd::compute(a)?.s.first().copied().unwrap_or(0.0))
}

/// Largest principal angle (radians) between the column spans of two
/// orthonormal bases of equal dimension, through the sine formulation
/// `sin θ_max = ‖(I − B₁B₁*) B₂‖₂` (accurate near zero, where the cosine
/// route loses half the digits).
pub fn principal_angle(b1: &CMat, b2: &CMat) -> Result<f64> {
    if b1.cols() != b2.cols() || b1.rows() != b2.rows() {
        return Err(Error::DimensionMismatch {
            expected: b1.cols(),
            got: b2.cols(),
        });
    }
    if b1.cols() == 0 {
        return Ok(0.0);
    }
    let residual = b2.sub(&b1.mul(&b1.adjoint().mul(b2)));
    let sine = op_norm_2(&residual)?.min(1.0);
    Ok(sine.asin())
}

/// Orthonormal basis of the intersection of column spans. Inputs must be
/// orthonormal bases in the same ambient dimension.
pub fn subspace_intersection(bases: &[CMat], dim: usize, rel_tol: f64) -> Result<CMat> {
    if bases.is_empty() {
        return Err(Error::Invalid("need at least one subspace".into()));
    }
    // x lies in every span iff (I − B_i B_i*) x = 0 for all i
    let mut stacked = CMat::zeros(dim * bases.len(), dim);
    for (idx, b) in bases.iter().enumerate() {
        if b.rows() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: b.rows(),
            });
        }
        let proj = b.mul(&b.adjoint());
        for i in 0..dim {
            for j in 0..dim {
                let id = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                stacked[(idx * dim + i, j)] = id - proj[(i, j)];
            }
        }
    }
    // absolute tolerance: the stacked matrix has O(1) scale by construction
    let svd = Svd::compute(&stacked)?;
    let cutoff = rel_tol.max(svd.s.first().copied().unwrap_or(0.0) * 1e-15);
    let rank = svd.s.iter().filter(|&&x| x > cutoff).count();
    Ok(svd.v.block(0, dim, rank, dim))
}
