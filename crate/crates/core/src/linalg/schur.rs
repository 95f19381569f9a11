//! Complex Schur decomposition via shifted QR, with ordered splits.
//!
//! `schur` reduces `A = Q T Q*` with `Q` unitary and `T` upper triangular:
//! Householder reduction to Hessenberg form, then an explicitly shifted QR
//! iteration (Wilkinson shifts, occasional exceptional shifts) with
//! deflation. `ordered_schur_split` reorders the triangular factor so a
//! selected eigenvalue cluster occupies the leading block, which yields both
//! an orthonormal basis of the associated invariant subspace (leading
//! columns of `Q`) and, through a small Sylvester solve, the spectral
//! projector onto it along the complementary spectral subspace.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::C64;

use super::dense::CMat;

/// Schur form `A = Q T Q*`.
#[derive(Debug, Clone)]
pub struct Schur {
    pub q: CMat,
    pub t: CMat,
}

impl Schur {
    pub fn eigenvalues(&self) -> Vec<C64> {
        (0..self.t.rows()).map(|i| self.t[(i, i)]).collect()
    }
}

/// Schur form reordered so the selected cluster fills rows `0..k`.
#[derive(Debug, Clone)]
pub struct SchurSplit {
    pub q: CMat,
    pub t: CMat,
    /// Number of selected eigenvalues (leading block size).
    pub k: usize,
}

impl SchurSplit {
    /// Orthonormal basis of the invariant subspace for the selected cluster.
    pub fn selected_basis(&self) -> CMat {
        self.q.block(0, self.q.rows(), 0, self.k)
    }
}

fn givens(f: C64, g: C64) -> (f64, C64, C64) {
    let fn_ = f.norm();
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, C64::new(0.0, 0.0), f);
    }
    if fn_ == 0.0 {
        return (0.0, g.conj() / gn, C64::new(gn, 0.0));
    }
    let h = (fn_ * fn_ + gn * gn).sqrt();
    let c = fn_ / h;
    let fs = f / fn_;
    let s = fs * g.conj() / h;
    (c, s, fs * h)
}

/// Householder reduction to upper Hessenberg form, `A = Q H Q*`.
fn hessenberg(a: &CMat) -> (CMat, CMat) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = CMat::identity(n);
    let mut v = vec![C64::new(0.0, 0.0); n];

    for k in 0..n.saturating_sub(2) {
        let mut norm2 = 0.0;
        for i in k + 1..n {
            norm2 += h[(i, k)].norm_sqr();
        }
        if norm2 <= f64::MIN_POSITIVE {
            continue;
        }
        let norm = norm2.sqrt();
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let alpha = -phase * norm;
        // v = x − α e₁, normalized
        let mut vnorm2 = 0.0;
        for i in k + 1..n {
            let vi = if i == k + 1 { h[(i, k)] - alpha } else { h[(i, k)] };
            v[i] = vi;
            vnorm2 += vi.norm_sqr();
        }
        if vnorm2 <= f64::MIN_POSITIVE {
            continue;
        }
        let inv = 1.0 / vnorm2.sqrt();
        for item in v.iter_mut().take(n).skip(k + 1) {
            *item *= inv;
        }
        // rows: H ← (I − 2vv*) H on rows k+1..n
        for col in k..n {
            let mut dot = C64::new(0.0, 0.0);
            for i in k + 1..n {
                dot += v[i].conj() * h[(i, col)];
            }
            let twice = dot * 2.0;
            for i in k + 1..n {
                let vi = v[i];
                h[(i, col)] -= vi * twice;
            }
        }
        // columns: H ← H (I − 2vv*) on columns k+1..n
        for row in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for j in k + 1..n {
                dot += h[(row, j)] * v[j];
            }
            let twice = dot * 2.0;
            for j in k + 1..n {
                h[(row, j)] -= twice * v[j].conj();
            }
        }
        // accumulate Q ← Q (I − 2vv*)
        for row in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for j in k + 1..n {
                dot += q[(row, j)] * v[j];
            }
            let twice = dot * 2.0;
            for j in k + 1..n {
                q[(row, j)] -= twice * v[j].conj();
            }
        }
        // clean the annihilated entries
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = C64::new(0.0, 0.0);
        }
    }
    (h, q)
}

fn wilkinson_shift(h: &CMat, hi: usize) -> C64 {
    let a = h[(hi - 2, hi - 2)];
    let b = h[(hi - 2, hi - 1)];
    let c = h[(hi - 1, hi - 2)];
    let d = h[(hi - 1, hi - 1)];
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mu1 = (a + d) * 0.5 + disc;
    let mu2 = (a + d) * 0.5 - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// One explicitly shifted QR step on the active window `[lo, hi)`.
fn qr_step(h: &mut CMat, q: &mut CMat, lo: usize, hi: usize, shift: C64) {
    let n = h.rows();
    for i in lo..hi {
        h[(i, i)] -= shift;
    }
    let mut rots: Vec<(f64, C64)> = Vec::with_capacity(hi - lo);
    for j in lo..hi - 1 {
        let (c, s, r) = givens(h[(j, j)], h[(j + 1, j)]);
        h[(j, j)] = r;
        h[(j + 1, j)] = C64::new(0.0, 0.0);
        for col in j + 1..n {
            let x = h[(j, col)];
            let y = h[(j + 1, col)];
            h[(j, col)] = x * c + y * s;
            h[(j + 1, col)] = y * c - x * s.conj();
        }
        rots.push((c, s));
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let j = lo + idx;
        let top = (j + 2).min(hi);
        for row in 0..top {
            let x = h[(row, j)];
            let y = h[(row, j + 1)];
            h[(row, j)] = x * c + y * s.conj();
            h[(row, j + 1)] = y * c - x * s;
        }
        for row in 0..n {
            let x = q[(row, j)];
            let y = q[(row, j + 1)];
            q[(row, j)] = x * c + y * s.conj();
            q[(row, j + 1)] = y * c - x * s;
        }
    }
    for i in lo..hi {
        h[(i, i)] += shift;
    }
}

/// Complex Schur decomposition.
pub fn schur(a: &CMat) -> Result<Schur> {
    if !a.is_square() {
        return Err(Error::Invalid("Schur requires a square matrix".into()));
    }
    let n = a.rows();
    if n == 0 {
        return Err(Error::Invalid("empty matrix".into()));
    }
    let (mut h, mut q) = hessenberg(a);
    let scale = h.norm_fro().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;

    let mut hi = n;
    let mut iters = 0usize;
    while hi > 1 {
        // locate the active block [lo, hi)
        let mut lo = hi - 1;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let local = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if sub <= eps * local.max(scale * 1e-3) {
                h[(lo, lo - 1)] = C64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            hi -= 1;
            iters = 0;
            continue;
        }
        iters += 1;
        if iters > 200 {
            return Err(Error::NoConvergence(format!(
                "QR iteration stalled on block ending at {hi}"
            )));
        }
        let shift = if iters.is_multiple_of(30) {
            // exceptional shift to break symmetric stalls
            h[(hi - 1, hi - 1)] + C64::new(1.5 * h[(hi - 1, hi - 2)].norm(), 0.0)
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_step(&mut h, &mut q, lo, hi, shift);
    }
    // enforce exact triangularity
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = C64::new(0.0, 0.0);
        }
    }
    Ok(Schur { q, t: h })
}

/// Swaps the adjacent diagonal entries `i, i+1` of the triangular factor by
/// a unitary similarity, updating `q` alongside.
fn swap_adjacent(t: &mut CMat, q: &mut CMat, i: usize) {
    let n = t.rows();
    let a = t[(i, i)];
    let b = t[(i, i + 1)];
    let d = t[(i + 1, i + 1)];
    // first column of the rotation = eigenvector of [[a,b],[0,d]] for d
    let v1 = b;
    let v2 = d - a;
    let nrm = (v1.norm_sqr() + v2.norm_sqr()).sqrt();
    let (g11, g21) = if nrm <= f64::MIN_POSITIVE {
        // already diagonal here: plain permutation
        (C64::new(0.0, 0.0), C64::new(1.0, 0.0))
    } else {
        (v1 / nrm, v2 / nrm)
    };
    let g12 = -g21.conj();
    let g22 = g11.conj();
    // T ← G* T G on rows/cols i, i+1
    for col in 0..n {
        let x = t[(i, col)];
        let y = t[(i + 1, col)];
        t[(i, col)] = g11.conj() * x + g21.conj() * y;
        t[(i + 1, col)] = g12.conj() * x + g22.conj() * y;
    }
    for row in 0..n {
        let x = t[(row, i)];
        let y = t[(row, i + 1)];
        t[(row, i)] = x * g11 + y * g21;
        t[(row, i + 1)] = x * g12 + y * g22;
    }
    for row in 0..n {
        let x = q[(row, i)];
        let y = q[(row, i + 1)];
        q[(row, i)] = x * g11 + y * g21;
        q[(row, i + 1)] = x * g12 + y * g22;
    }
    t[(i + 1, i)] = C64::new(0.0, 0.0);
    // keep the exchanged eigenvalues exact
    t[(i, i)] = d;
    t[(i + 1, i + 1)] = a;
}

/// Schur form with every eigenvalue satisfying `select` moved to the leading
/// block. Returns the reordered factorization and the block size.
pub fn ordered_schur_split<F: Fn(C64) -> bool>(a: &CMat, select: F) -> Result<SchurSplit> {
    let Schur { mut q, mut t } = schur(a)?;
    let n = t.rows();
    let mut flags: Vec<bool> = (0..n).map(|i| select(t[(i, i)])).collect();
    let mut target = 0usize;
    for i in 0..n {
        if flags[i] {
            let mut j = i;
            while j > target {
                swap_adjacent(&mut t, &mut q, j - 1);
                flags.swap(j - 1, j);
                j -= 1;
            }
            target += 1;
        }
    }
    Ok(SchurSplit { q, t, k: target })
}

fn upper_tri_shifted_solve(t: &CMat, shift: C64, b: &mut [C64], scale: f64) -> Result<()> {
    let k = t.rows();
    for i in (0..k).rev() {
        let mut acc = b[i];
        for j in i + 1..k {
            acc -= t[(i, j)] * b[j];
        }
        let d = t[(i, i)] - shift;
        if d.norm() <= scale * 1e-13 {
            return Err(Error::Singular(
                "eigenvalue clusters are not separated; spectral projector ill-defined".into(),
            ));
        }
        b[i] = acc / d;
    }
    Ok(())
}

/// Spectral projector onto the selected invariant subspace, along the
/// complementary spectral subspace: `P = Q [I R; 0 0] Q*` where
/// `T₁₁R − RT₂₂ = T₁₂`.
pub fn spectral_projector(split: &SchurSplit) -> Result<CMat> {
    let n = split.t.rows();
    let k = split.k;
    if k == 0 {
        return Ok(CMat::zeros(n, n));
    }
    if k == n {
        return Ok(CMat::identity(n));
    }
    let t11 = split.t.block(0, k, 0, k);
    let t12 = split.t.block(0, k, k, n);
    let t22 = split.t.block(k, n, k, n);
    let scale = split.t.norm_fro().max(1.0);

    let m = n - k;
    let mut r = CMat::zeros(k, m);
    let mut col = vec![C64::new(0.0, 0.0); k];
    for j in 0..m {
        for i in 0..k {
            let mut acc = t12[(i, j)];
            for l in 0..j {
                acc += t22[(l, j)] * r[(i, l)];
            }
            col[i] = acc;
        }
        upper_tri_shifted_solve(&t11, t22[(j, j)], &mut col, scale)?;
        for i in 0..k {
            r[(i, j)] = col[i];
        }
    }
    // middle factor [I R; 0 0]
    let mut mid = CMat::zeros(n, n);
    for i in 0..k {
        mid[(i, i)] = C64::new(1.0, 0.0);
        for j in 0..m {
            mid[(i, k + j)] = r[(i, j)];
        }
    }
    Ok(split.q.mul(&mid).mul(&split.q.adjoint()))
}
