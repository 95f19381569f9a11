//! Orbit-level stability analytics and the finite-horizon classifier.
//!
//! Everything here reports *evidence*: every verdict carries the horizon,
//! tolerance and truncation that produced it, because the properties being
//! probed (weak stability, almost weak stability, mixing) are statements
//! about `t → ∞` that no finite computation decides.
//!
//! The central dichotomy: a weak orbit whose Cesàro mean of `|·|` decays has
//! a density-one set of times along which it vanishes (`density_one_extract`
//! builds that set constructively by excising super-level sets), yet the
//! orbit may keep returning to an `O(1)` floor along a sparse sequence —
//! `classify` separates the two by pairing the Cesàro tail against a
//! trailing-window recurrence floor probed at adversarial times.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math methods under no_std
use num_traits::Float;

use crate::backends::{Backend, ObservationPair};
use crate::error::{Error, Result};
use crate::grid::{running_mean, trailing_mean, Signal, TimeGrid, Transform};
use crate::resolvent::ResolventProbe;
use crate::rng::SplitMix64;
use crate::semigroup::SemigroupEvaluator;
use crate::C64;

/// Weak orbit of an observation pair (delegates to the backend).
pub fn weak_orbit(backend: &Backend, pair: &ObservationPair, grid: &TimeGrid) -> Result<Signal> {
    backend.weak_orbit(pair, grid)
}

/// Orbit value at a single (off-grid) time.
pub fn orbit_value(backend: &Backend, pair: &ObservationPair, t: f64) -> Result<C64> {
    match (backend, pair) {
        (Backend::Matrix(ms), ObservationPair::Vectors { x, y }) => {
            let evolved = ms.apply(t, x)?;
            ms.pair(&evolved, y)
        }
        (Backend::Multiplication(ms), ObservationPair::Vectors { x, y }) => {
            let evolved = ms.apply(t, x)?;
            ms.pair(&evolved, y)
        }
        (Backend::Koopman(ks), ObservationPair::Koopman { observable, functional }) => {
            match functional {
                crate::backends::Functional::Point(x0) => ks.observe(t, observable, x0),
                crate::backends::Functional::Empirical(points) => {
                    let mut acc = C64::new(0.0, 0.0);
                    for (x0, w) in points {
                        acc += ks.observe(t, observable, x0)? * *w;
                    }
                    Ok(acc)
                }
            }
        }
        _ => Err(Error::Unsupported(
            "observation pair kind does not match backend".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// density-one extraction

/// Densities of super-level sets per ladder entry, and the constructed
/// density-one candidate set `M`.
#[derive(Debug, Clone)]
pub struct DensityReport {
    /// `(ε, density of {f ≥ ε} within the block group assigned to ε)`.
    pub excised_densities: Vec<(f64, f64)>,
    /// Per-ε block densities over the whole horizon (diagnostic trend data).
    pub block_densities: Vec<Vec<f64>>,
    /// `M` as a union of grid intervals `(t_lo, t_hi)` on which the signal
    /// stays below the locally active ε.
    pub m_intervals: Vec<(f64, f64)>,
    /// Fraction of the horizon covered by `M`.
    pub m_fraction: f64,
    /// Positive iff every excised density is at most `density_tol`.
    pub verdict_positive: bool,
    pub density_tol: f64,
    pub blocks: usize,
}

/// Constructive density-one extraction on `|s|`.
///
/// The horizon is split into `blocks` equal blocks; the strictly decreasing
/// `epsilon_ladder` is assigned to consecutive block groups (later blocks
/// get smaller ε, mirroring the classical construction where super-level
/// sets of successively smaller ε are excised on successively later time
/// ranges). `M` is the complement of the excised union; the verdict is
/// positive iff every excised density is below `density_tol`.
pub fn density_one_extract(
    s: &Signal,
    epsilon_ladder: &[f64],
    blocks: usize,
    density_tol: f64,
) -> Result<DensityReport> {
    if epsilon_ladder.is_empty() {
        return Err(Error::Invalid("epsilon ladder must be nonempty".into()));
    }
    if !epsilon_ladder.windows(2).all(|w| w[1] < w[0]) || epsilon_ladder.iter().any(|&e| e <= 0.0) {
        return Err(Error::Invalid(
            "epsilon ladder must be strictly decreasing and positive".into(),
        ));
    }
    if blocks < epsilon_ladder.len() {
        return Err(Error::Invalid("need at least one block per ladder entry".into()));
    }
    let abs: Vec<f64> = s.values().iter().map(|z| z.norm()).collect();
    let n = abs.len();
    let m = epsilon_ladder.len();

    let block_of = |idx: usize| ((idx * blocks) / n).min(blocks - 1);
    let group_of_block = |b: usize| ((b * m) / blocks).min(m - 1);

    // per-ε, per-block densities
    let mut block_densities = vec![vec![0.0f64; blocks]; m];
    let mut block_counts = vec![0usize; blocks];
    for (idx, &v) in abs.iter().enumerate() {
        let b = block_of(idx);
        block_counts[b] += 1;
        for (j, &eps) in epsilon_ladder.iter().enumerate() {
            if v >= eps {
                block_densities[j][b] += 1.0;
            }
        }
    }
    for j in 0..m {
        for b in 0..blocks {
            if block_counts[b] > 0 {
                block_densities[j][b] /= block_counts[b] as f64;
            }
        }
    }

    // excised density of ε_j over its own block group
    let mut excised_densities = Vec::with_capacity(m);
    for (j, &eps) in epsilon_ladder.iter().enumerate() {
        let mut hits = 0usize;
        let mut total = 0usize;
        for b in 0..blocks {
            if group_of_block(b) == j {
                total += block_counts[b];
                hits += (block_densities[j][b] * block_counts[b] as f64).round() as usize;
            }
        }
        let d = if total > 0 { hits as f64 / total as f64 } else { 0.0 };
        excised_densities.push((eps, d));
    }

    // M: grid points below the locally active ε, merged into intervals
    let grid = s.grid();
    let mut m_intervals: Vec<(f64, f64)> = Vec::new();
    let mut kept = 0usize;
    let mut open: Option<f64> = None;
    for (idx, &v) in abs.iter().enumerate() {
        let eps = epsilon_ladder[group_of_block(block_of(idx))];
        let t = grid.point(idx);
        if v < eps {
            kept += 1;
            if open.is_none() {
                open = Some(t);
            }
        } else if let Some(t0) = open.take() {
            m_intervals.push((t0, t));
        }
    }
    if let Some(t0) = open {
        m_intervals.push((t0, grid.t_max()));
    }
    let m_fraction = kept as f64 / n as f64;
    let verdict_positive = excised_densities.iter().all(|&(_, d)| d <= density_tol);
    Ok(DensityReport {
        excised_densities,
        block_densities,
        m_intervals,
        m_fraction,
        verdict_positive,
        density_tol,
        blocks,
    })
}

// ---------------------------------------------------------------------------
// Cesàro statistic

/// Running Cesàro mean of `|⟨T(t)x, y⟩|` and its trailing-window tail value
/// (mean of the running mean over the last 10% of the horizon).
pub fn cesaro_stability_statistic(
    backend: &Backend,
    pair: &ObservationPair,
    grid: &TimeGrid,
) -> Result<(Signal, f64)> {
    let orbit = backend.weak_orbit(pair, grid)?;
    let mean = running_mean(&orbit, Transform::Abs);
    let tail = trailing_mean(&mean, 0.1);
    Ok((mean, tail))
}

// ---------------------------------------------------------------------------
// relatively dense sequences

/// Comparison of orbit smallness along a relatively dense sequence with
/// smallness everywhere on the tail window.
#[derive(Debug, Clone)]
pub struct RelativelyDenseReport {
    /// `sup |orbit|` over the tail of the full grid.
    pub sup_tail_grid: f64,
    /// `sup |orbit(t_n)|` over sequence times in the tail window.
    pub sup_tail_sequence: f64,
    /// `sup_{0 ≤ s ≤ ℓ} ‖T(s)‖` (sampled), the constant linking the two.
    pub propagator_sup: Option<f64>,
    /// True when the sequence values have not decayed below the hypothesis
    /// tolerance: the theorem's premise is unmet and no conclusion follows.
    pub hypothesis_fails: bool,
    pub ell: f64,
    pub tail_start: f64,
}

/// Verifies the sequence is relatively dense (gaps ≤ ℓ) and exhibits the
/// transfer "small along `{t_n}` ⇒ small everywhere" on the tail window.
pub fn relatively_dense_check(
    backend: &Backend,
    pair: &ObservationPair,
    t_sequence: &[f64],
    ell: f64,
    grid: &TimeGrid,
    tail_fraction: f64,
    hypothesis_tol: f64,
) -> Result<RelativelyDenseReport> {
    if t_sequence.is_empty() {
        return Err(Error::Invalid("sequence must be nonempty".into()));
    }
    if !(ell > 0.0) {
        return Err(Error::Invalid("ell must be positive".into()));
    }
    let mut prev = 0.0f64;
    for (i, &t) in t_sequence.iter().enumerate() {
        if t < prev {
            return Err(Error::Invalid("sequence must be nondecreasing".into()));
        }
        let gap = t - prev;
        if gap > ell + 1e-12 {
            return Err(Error::Invalid(alloc::format!(
                "gap {gap:.6} before t_{i} = {t:.6} exceeds ell = {ell}: sequence is not relatively dense"
            )));
        }
        prev = t;
    }
    if grid.t_max() - prev > ell + 1e-12 {
        return Err(Error::Invalid(alloc::format!(
            "gap {:.6} between last sequence time and the horizon exceeds ell = {ell}",
            grid.t_max() - prev
        )));
    }

    let orbit = backend.weak_orbit(pair, grid)?;
    let tail_start = grid.t_max() - tail_fraction * (grid.t_max() - grid.t_start());
    let k0 = grid.index_at_or_after(tail_start);
    let sup_tail_grid = orbit.sup_abs_from(k0);

    let mut sup_tail_sequence = 0.0f64;
    for &t in t_sequence.iter().filter(|&&t| t >= tail_start) {
        sup_tail_sequence = sup_tail_sequence.max(orbit_value(backend, pair, t)?.norm());
    }

    let propagator_sup = match backend {
        Backend::Matrix(ms) => {
            let mut sup = 0.0f64;
            for k in 0..=20 {
                let s = ell * k as f64 / 20.0;
                let prop = ms.propagator(s)?;
                sup = sup.max(crate::linalg::op_norm_2(&prop)?);
            }
            Some(sup)
        }
        Backend::Multiplication(_) => Some(1.0),
        Backend::Koopman(_) => None,
    };
    Ok(RelativelyDenseReport {
        sup_tail_grid,
        sup_tail_sequence,
        propagator_sup,
        hypothesis_fails: sup_tail_sequence >= hypothesis_tol,
        ell,
        tail_start,
    })
}

// ---------------------------------------------------------------------------
// mixing correlations

/// Subset of the circle ℝ/ℤ as a union of intervals (lengths in [0, 1]).
#[derive(Debug, Clone)]
pub struct CircleSet {
    intervals: Vec<(f64, f64)>,
}

fn wrap_unit(x: f64) -> f64 {
    let r = x % 1.0;
    if r < 0.0 {
        r + 1.0
    } else {
        r
    }
}

impl CircleSet {
    /// Intervals are wrapped into `[0, 1)` and may cross the seam.
    pub fn new(intervals: &[(f64, f64)]) -> Result<Self> {
        let mut normalized = Vec::new();
        for &(lo, hi) in intervals {
            if !(hi > lo) || hi - lo > 1.0 + 1e-12 {
                return Err(Error::Invalid("interval must satisfy 0 < hi − lo ≤ 1".into()));
            }
            let span = (hi - lo).min(1.0);
            let start = wrap_unit(lo);
            if start + span <= 1.0 + 1e-15 {
                normalized.push((start, (start + span).min(1.0)));
            } else {
                normalized.push((start, 1.0));
                normalized.push((0.0, start + span - 1.0));
            }
        }
        Ok(Self { intervals: normalized })
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|&(a, b)| b - a).sum()
    }

    fn shifted(&self, delta: f64) -> CircleSet {
        let moved: Vec<(f64, f64)> = self
            .intervals
            .iter()
            .map(|&(a, b)| (a + delta, a + delta + (b - a)))
            .collect();
        CircleSet::new(&moved).expect("shift preserves validity")
    }

    fn overlap(&self, other: &CircleSet) -> f64 {
        let mut total = 0.0;
        for &(a1, b1) in &self.intervals {
            for &(a2, b2) in &other.intervals {
                let lo = a1.max(a2);
                let hi = b1.min(b2);
                if hi > lo {
                    total += hi - lo;
                }
            }
        }
        total
    }

    pub fn contains(&self, x: f64) -> bool {
        let p = wrap_unit(x);
        self.intervals.iter().any(|&(a, b)| p >= a && p < b)
    }
}

/// Exact mixing correlation of the torus rotation:
/// `C(t) = m(φ_t^{-1}A ∩ B) − m(A)m(B)` with `φ_t(x) = x + αt`.
pub fn mixing_correlation_torus(alpha: f64, set_a: &CircleSet, set_b: &CircleSet, t: f64) -> f64 {
    // φ_t^{-1} A = A − αt
    let pulled = set_a.shifted(-alpha * t);
    pulled.overlap(set_b) - set_a.measure() * set_b.measure()
}

/// Monte-Carlo mixing correlation for a general flow with indicator sets:
/// samples initial states from `sampler_box` (uniform, seeded), transports
/// them for time `t`, and estimates
/// `μ̂(φ_t^{-1}A ∩ B) − μ̂(A)μ̂(B)` with its standard error.
#[allow(clippy::too_many_arguments)]
pub fn mixing_correlation_monte_carlo(
    flow: &crate::backends::Flow,
    in_a: &dyn Fn(&[f64]) -> bool,
    in_b: &dyn Fn(&[f64]) -> bool,
    t: f64,
    sampler_box: &[(f64, f64)],
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if samples == 0 {
        return Err(Error::Invalid("sampler budget must be positive".into()));
    }
    if sampler_box.len() != flow.dim() {
        return Err(Error::DimensionMismatch {
            expected: flow.dim(),
            got: sampler_box.len(),
        });
    }
    let mut rng = SplitMix64::new(seed);
    let mut joint = 0usize;
    let mut count_a = 0usize;
    let mut count_b = 0usize;
    let mut state = vec![0.0f64; flow.dim()];
    for _ in 0..samples {
        for (v, &(lo, hi)) in state.iter_mut().zip(sampler_box) {
            *v = rng.uniform_in(lo, hi);
        }
        let transported = flow.integrate(&state, t)?;
        let hit_a = in_a(&transported);
        let hit_b = in_b(&state);
        if hit_a {
            count_a += 1;
        }
        if hit_b {
            count_b += 1;
        }
        if hit_a && hit_b {
            joint += 1;
        }
    }
    let n = samples as f64;
    let p_joint = joint as f64 / n;
    let corr = p_joint - (count_a as f64 / n) * (count_b as f64 / n);
    // binomial-style error on the joint estimate
    let std_err = (p_joint * (1.0 - p_joint) / n).sqrt();
    Ok((corr, std_err))
}

// ---------------------------------------------------------------------------
// recurrence structure of a signal

/// Peaks of `|s|` and the empirical return period measured on a window.
#[derive(Debug, Clone)]
pub struct RecurrenceReport {
    /// `(t, |s(t)|)` at every local maximum of `|s|` at or above the
    /// threshold, over the whole signal.
    pub peaks: Vec<(f64, f64)>,
    /// Peaks falling inside the measurement window.
    pub peaks_in_window: usize,
    /// Empirical return period: the largest gap between consecutive peak
    /// times inside the window (needs at least two peaks there).
    pub return_period: Option<f64>,
    /// True iff every sub-window of length `return_period` inside the
    /// measurement window contains a peak, i.e. the boundary gaps also stay
    /// within the period.
    pub every_window_covered: bool,
    pub threshold: f64,
    pub window: (f64, f64),
}

/// Finds local maxima of `|s| ≥ threshold` and measures the empirical
/// return period on `window`, reporting whether peaks recur at that period
/// across the whole window.
pub fn recurrence_check(s: &Signal, threshold: f64, window: (f64, f64)) -> RecurrenceReport {
    let abs: Vec<f64> = s.values().iter().map(|z| z.norm()).collect();
    let grid = s.grid();
    let mut peaks: Vec<(f64, f64)> = Vec::new();
    for k in 0..abs.len() {
        let v = abs[k];
        if v < threshold {
            continue;
        }
        let left = if k > 0 { abs[k - 1] } else { f64::NEG_INFINITY };
        let right = if k + 1 < abs.len() { abs[k + 1] } else { f64::NEG_INFINITY };
        // plateau-tolerant local maximum
        if v >= left && v > right || (v > left && v >= right) {
            peaks.push((grid.point(k), v));
        }
    }
    let (w0, w1) = window;
    let inside: Vec<f64> = peaks
        .iter()
        .map(|&(t, _)| t)
        .filter(|&t| t >= w0 && t <= w1)
        .collect();
    let peaks_in_window = inside.len();
    let return_period = if inside.len() >= 2 {
        Some(
            inside
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(0.0f64, f64::max),
        )
    } else {
        None
    };
    let every_window_covered = match return_period {
        Some(p) => {
            let first_gap = inside.first().map(|&t| t - w0).unwrap_or(f64::INFINITY);
            let last_gap = inside.last().map(|&t| w1 - t).unwrap_or(f64::INFINITY);
            first_gap <= p && last_gap <= p
        }
        None => false,
    };
    RecurrenceReport {
        peaks,
        peaks_in_window,
        return_period,
        every_window_covered,
        threshold,
        window,
    }
}

/// First index at which the trailing `window` values of a series have
/// spread (max − min) at most `tol`: plateau detection for matched-horizon
/// comparisons.
pub fn plateau_index(series: &[f64], window: usize, tol: f64) -> Option<usize> {
    if series.len() < window || window == 0 {
        return None;
    }
    for end in window..=series.len() {
        let slice = &series[end - window..end];
        let max = slice.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = slice.iter().copied().fold(f64::INFINITY, f64::min);
        if max - min <= tol {
            return Some(end - 1);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// the classifier

/// Finite-horizon stability verdicts; all are evidence labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    WeakStabilityEvidence,
    AlmostWeakOnlyEvidence,
    NotAlmostWeak,
    Inconclusive,
}

/// Tolerances and horizons the classifier works at.
#[derive(Debug, Clone)]
pub struct ClassifyConfig {
    pub grid: TimeGrid,
    /// Cesàro tail must fall below this for any stability evidence.
    pub cesaro_tol: f64,
    /// Trailing orbit suprema at or above this count as recurrence.
    pub recurrence_floor: f64,
    /// Trailing orbit suprema below this count as weak-stability evidence.
    pub weak_tol: f64,
    /// Fraction of the horizon forming the trailing window.
    pub trailing_fraction: f64,
    /// Abel ladder values of `a` (descending).
    pub abel_ladder: Vec<f64>,
    /// Extrapolated Abel limit at or above this flags an eigenvalue.
    pub abel_floor: f64,
    /// Resolvent sweeps are skipped above this backend dimension.
    pub abel_max_dim: usize,
    /// Relative threshold classifying eigenvalues as imaginary (matrix).
    pub tol_im: f64,
    /// Extra probe times added to the trailing-window recurrence scan.
    pub adversarial_probes: Vec<f64>,
}

impl ClassifyConfig {
    pub fn with_grid(grid: TimeGrid) -> Self {
        Self {
            grid,
            cesaro_tol: 0.05,
            recurrence_floor: 0.2,
            weak_tol: 0.05,
            trailing_fraction: 0.1,
            abel_ladder: vec![0.05, 0.0125, 0.003125],
            abel_floor: 0.1,
            abel_max_dim: 4096,
            tol_im: crate::backends::DEFAULT_TOL_IM,
            adversarial_probes: Vec::new(),
        }
    }
}

/// Everything the classifier measured, with the verdict and provenance.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub verdict: Verdict,
    /// Worst (largest) Cesàro tail over the observation pairs.
    pub cesaro_abs_tail: f64,
    /// Worst trailing-window orbit supremum, adversarial probes included.
    pub recurrence_floor_observed: f64,
    /// Worst Abel-ladder values `(a, a·∫|⟨R(a+is)x,y⟩|² ds)`.
    pub abel_ladder_values: Vec<(f64, f64)>,
    /// Linear extrapolation of the Abel values to `a → 0⁺`.
    pub abel_limit_estimate: Option<f64>,
    /// Max over pairs and candidate frequencies of `‖aR(a+is)x‖` at the
    /// smallest ladder `a`.
    pub pointwise_abel_max: Option<f64>,
    /// Imaginary-axis eigenvalue count (matrix backends only).
    pub imaginary_eigen_count: Option<usize>,
    /// Echo of the tolerances and horizons that produced the numbers.
    pub config: ClassifyConfig,
    /// Diagnostics skipped for this backend (with reasons).
    pub skipped: Vec<alloc::string::String>,
}

/// Aggregates the orbit and resolvent criteria over observation pairs into
/// a single evidence verdict.
///
/// Pairs are normalized in the backend inner product first, so the verdict
/// is invariant under nonzero rescaling of any observation.
pub fn classify(
    backend: &Backend,
    pairs: &[ObservationPair],
    config: &ClassifyConfig,
) -> Result<StabilityReport> {
    if pairs.is_empty() {
        return Err(Error::Invalid("need at least one observation pair".into()));
    }
    let mut cesaro_abs_tail = 0.0f64;
    let mut recurrence = 0.0f64;
    let mut skipped: Vec<alloc::string::String> = Vec::new();

    let normalized: Vec<ObservationPair> = pairs
        .iter()
        .map(|p| backend.normalized_pair(p))
        .collect::<Result<_>>()?;

    for pair in &normalized {
        let orbit = backend.weak_orbit(pair, &config.grid)?;
        let mean = running_mean(&orbit, Transform::Abs);
        cesaro_abs_tail = cesaro_abs_tail.max(trailing_mean(&mean, 0.1));

        let tail_start = config.grid.t_max()
            - config.trailing_fraction * (config.grid.t_max() - config.grid.t_start());
        let k0 = config.grid.index_at_or_after(tail_start);
        recurrence = recurrence.max(orbit.sup_abs_from(k0));
        for &tp in &config.adversarial_probes {
            recurrence = recurrence.max(orbit_value(backend, pair, tp)?.norm());
        }
    }

    // resolvent side
    let mut abel_ladder_values: Vec<(f64, f64)> = Vec::new();
    let mut abel_limit_estimate = None;
    let mut pointwise_abel_max = None;
    let mut imaginary_eigen_count = None;

    match backend {
        Backend::Matrix(ms) => {
            imaginary_eigen_count = Some(ms.certificate().imaginary_count);
            let probe = ResolventProbe::for_matrix(ms)?;
            let (ladder, limit, pointwise) =
                abel_ladder(&probe, &normalized, &config.abel_ladder, ms.certificate())?;
            abel_ladder_values = ladder;
            abel_limit_estimate = limit;
            pointwise_abel_max = pointwise;
        }
        Backend::Multiplication(ms) => {
            // above the dimension cutoff the ladder is only affordable when
            // every pair rides the structured orbit fast path (the
            // time-domain route then costs O(depth) per quadrature point)
            let all_fast = normalized.iter().all(|p| match p {
                ObservationPair::Vectors { x, y } => ms.has_fast_orbit(x, y),
                _ => false,
            });
            if ms.dim() <= config.abel_max_dim || all_fast {
                let probe = ResolventProbe::for_multiplication(ms);
                let (ladder, limit, _) =
                    abel_ladder(&probe, &normalized, &config.abel_ladder, &no_freqs())?;
                abel_ladder_values = ladder;
                abel_limit_estimate = limit;
            } else {
                skipped.push(
                    "abel ladder (dimension above abel_max_dim and no structured orbit fast path)"
                        .into(),
                );
            }
            if ms.dim() > config.abel_max_dim {
                skipped.push("pointwise abel sweep (dimension above abel_max_dim)".into());
            }
            skipped.push(
                "imaginary eigenvalue scan (atoms of a discrete measure all generate point spectrum; \
                 the scan is meaningful for matrix backends only)"
                    .into(),
            );
        }
        Backend::Koopman(_) => {
            skipped.push("resolvent criteria (orbit-only backend, Laplace mode needs Re λ ≥ 0.1)".into());
            skipped.push("imaginary eigenvalue scan (no generator matrix)".into());
        }
    }

    let eigen_flag = imaginary_eigen_count.map(|c| c > 0).unwrap_or(false);
    let abel_flag = abel_limit_estimate
        .map(|v: f64| v >= config.abel_floor)
        .unwrap_or(false);

    let verdict = if eigen_flag || abel_flag {
        Verdict::NotAlmostWeak
    } else if cesaro_abs_tail < config.cesaro_tol && recurrence < config.weak_tol {
        Verdict::WeakStabilityEvidence
    } else if cesaro_abs_tail < config.cesaro_tol && recurrence >= config.recurrence_floor {
        Verdict::AlmostWeakOnlyEvidence
    } else {
        Verdict::Inconclusive
    };

    Ok(StabilityReport {
        verdict,
        cesaro_abs_tail,
        recurrence_floor_observed: recurrence,
        abel_ladder_values,
        abel_limit_estimate,
        pointwise_abel_max,
        imaginary_eigen_count,
        config: config.clone(),
        skipped,
    })
}

trait FrequencyCandidates {
    fn candidates(&self) -> Vec<f64>;
}

impl FrequencyCandidates for crate::backends::BoundednessCertificate {
    fn candidates(&self) -> Vec<f64> {
        let mut f: Vec<f64> = self.eigenvalues.iter().map(|z| z.im).collect();
        f.push(0.0);
        f
    }
}

struct NoFreqs;

fn no_freqs() -> NoFreqs {
    NoFreqs
}

impl FrequencyCandidates for NoFreqs {
    fn candidates(&self) -> Vec<f64> {
        Vec::new()
    }
}

type LadderOutcome = (Vec<(f64, f64)>, Option<f64>, Option<f64>);

fn abel_ladder(
    probe: &ResolventProbe<'_>,
    pairs: &[ObservationPair],
    ladder: &[f64],
    freqs: &dyn FrequencyCandidates,
) -> Result<LadderOutcome> {
    let mut values: Vec<(f64, f64)> = Vec::with_capacity(ladder.len());
    for &a in ladder {
        let mut worst = 0.0f64;
        for pair in pairs {
            if let ObservationPair::Vectors { x, y } = pair {
                worst = worst.max(probe.abel_square_integral(x, y, a)?.value);
            }
        }
        values.push((a, worst));
    }
    // linear-in-a extrapolation to 0 from the two smallest ladder points
    let limit = if values.len() >= 2 {
        let (a0, v0) = values[values.len() - 2];
        let (a1, v1) = values[values.len() - 1];
        Some((v1 - a1 * (v0 - v1) / (a0 - a1)).max(0.0))
    } else {
        values.last().map(|&(_, v)| v)
    };

    let mut pointwise = None;
    let cands = freqs.candidates();
    if !cands.is_empty() {
        if let Some(&a_min) = ladder.last() {
            let mut max_val = 0.0f64;
            for pair in pairs {
                if let ObservationPair::Vectors { x, .. } = pair {
                    for &s in &cands {
                        max_val = max_val.max(probe.abel_pointwise(x, a_min, s)?);
                    }
                }
            }
            pointwise = Some(max_val);
        }
    }
    Ok((values, limit, pointwise))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::{MatrixGenerator, MatrixSemigroup, MultiplicationSemigroup};
    use crate::linalg::CMat;
    use crate::measures::DiscreteMeasure;
    use crate::vector::ComplexVector;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn matrix_backend(diag: &[C64]) -> Backend {
        Backend::Matrix(
            MatrixSemigroup::new(MatrixGenerator::new(CMat::diag(diag)).unwrap()).unwrap(),
        )
    }

    fn vec_pair(x: ComplexVector, y: ComplexVector) -> ObservationPair {
        ObservationPair::Vectors { x, y }
    }

    #[test]
    fn density_extract_zero_signal_keeps_everything() {
        let grid = TimeGrid::new(0.0, 0.1, 1000).unwrap();
        let s = Signal::sample(grid, |_| c(0.0, 0.0)).unwrap();
        let rep = density_one_extract(&s, &[0.5, 0.25, 0.1], 10, 0.05).unwrap();
        assert!(rep.verdict_positive);
        assert!((rep.m_fraction - 1.0).abs() < 1e-12);
        assert!(rep.excised_densities.iter().all(|&(_, d)| d == 0.0));
    }

    #[test]
    fn density_extract_bump_train_passes() {
        // f = 1 on [3^k, 3^k + 1] for k ≤ 8, else 0, horizon 10^4
        let grid = TimeGrid::new(0.0, 0.1, 100_000).unwrap();
        let s = Signal::sample(grid, |t| {
            let mut v = 0.0;
            for k in 0..=8 {
                let lo = 3.0f64.powi(k);
                if t >= lo && t <= lo + 1.0 {
                    v = 1.0;
                }
            }
            c(v, 0.0)
        })
        .unwrap();
        let rep = density_one_extract(&s, &[0.5, 0.25, 0.1], 10, 0.05).unwrap();
        assert!(rep.verdict_positive, "densities {:?}", rep.excised_densities);
        // density at ε = 0.5 over its group is tiny (≈ bumps/horizon)
        assert!(rep.excised_densities[0].1 <= 9.0 * 10.0 / 1e4);
    }

    #[test]
    fn density_extract_abs_cos_fails() {
        let grid = TimeGrid::new(0.0, 0.01, 50_000).unwrap();
        let s = Signal::sample(grid, |t| c(t.cos().abs(), 0.0)).unwrap();
        let rep = density_one_extract(&s, &[0.5, 0.25, 0.1], 10, 0.05).unwrap();
        assert!(!rep.verdict_positive);
        // measure of {|cos| ≥ ½} is 2/3 per period
        let d_half = rep.excised_densities[0].1;
        assert!((d_half - 2.0 / 3.0).abs() < 0.02, "density {d_half}");
    }

    #[test]
    fn density_ladder_must_decrease() {
        let grid = TimeGrid::new(0.0, 0.1, 100).unwrap();
        let s = Signal::sample(grid, |_| c(0.0, 0.0)).unwrap();
        assert!(density_one_extract(&s, &[0.1, 0.5], 10, 0.05).is_err());
        assert!(density_one_extract(&s, &[], 10, 0.05).is_err());
    }

    #[test]
    fn cesaro_statistic_scalar_decay() {
        let backend = matrix_backend(&[c(-1.0, 0.0)]);
        let pair = vec_pair(ComplexVector::ones(1), ComplexVector::ones(1));
        let grid = TimeGrid::new(0.0, 0.01, 10_000).unwrap();
        let (_, tail) = cesaro_stability_statistic(&backend, &pair, &grid).unwrap();
        // running mean at T = 100 is ≈ (1 − e^{−t})/t ≈ 0.01 on the tail
        assert!(tail < 0.012 && tail > 0.008, "tail {tail}");
    }

    #[test]
    fn cesaro_statistic_rotation_stays_at_one() {
        let backend = matrix_backend(&[c(0.0, 1.0)]);
        let pair = vec_pair(ComplexVector::ones(1), ComplexVector::ones(1));
        let grid = TimeGrid::new(0.0, 0.01, 10_000).unwrap();
        let (_, tail) = cesaro_stability_statistic(&backend, &pair, &grid).unwrap();
        assert!((tail - 1.0).abs() < 1e-10, "tail {tail}");
    }

    #[test]
    fn relatively_dense_transfer_on_stable_matrix() {
        let backend = matrix_backend(&[c(-0.5, 0.0), c(-1.0, 0.0)]);
        let x = ComplexVector::ones(2);
        let pair = vec_pair(x.clone(), x);
        let grid = TimeGrid::new(0.0, 0.05, 400).unwrap(); // T = 20
        let seq: Vec<f64> = (0..=20).map(|k| k as f64).collect();
        let rep =
            relatively_dense_check(&backend, &pair, &seq, 1.0, &grid, 0.25, 0.2).unwrap();
        assert!(!rep.hypothesis_fails);
        let bound = rep.propagator_sup.unwrap();
        assert!(rep.sup_tail_grid <= bound * rep.sup_tail_sequence.max(1e-300) * 1.6 + 1e-9,
            "grid sup {} vs seq sup {} with propagator bound {}",
            rep.sup_tail_grid, rep.sup_tail_sequence, bound);
    }

    #[test]
    fn relatively_dense_hypothesis_failure_reported() {
        let backend = matrix_backend(&[c(0.0, 1.0)]);
        let x = ComplexVector::ones(1);
        let pair = vec_pair(x.clone(), x);
        let grid = TimeGrid::new(0.0, 0.05, 400).unwrap();
        let seq: Vec<f64> = (0..=20).map(|k| k as f64).collect();
        let rep =
            relatively_dense_check(&backend, &pair, &seq, 1.0, &grid, 0.25, 0.2).unwrap();
        assert!(rep.hypothesis_fails);
    }

    #[test]
    fn relatively_dense_validation_names_the_gap() {
        let backend = matrix_backend(&[c(-1.0, 0.0)]);
        let x = ComplexVector::ones(1);
        let pair = vec_pair(x.clone(), x);
        let grid = TimeGrid::new(0.0, 0.1, 1000).unwrap();
        // 3^k sequence has gaps 2·3^{k-1} > 1
        let seq: Vec<f64> = (0..=4).map(|k| 3.0f64.powi(k)).collect();
        let err = relatively_dense_check(&backend, &pair, &seq, 1.0, &grid, 0.25, 0.2)
            .unwrap_err();
        let msg = alloc::format!("{err}");
        assert!(msg.contains("not relatively dense"), "message: {msg}");
    }

    #[test]
    fn torus_mixing_correlation_closed_form() {
        let a = CircleSet::new(&[(0.0, 0.5)]).unwrap();
        let b = CircleSet::new(&[(0.0, 0.5)]).unwrap();
        assert!((mixing_correlation_torus(1.0, &a, &b, 0.0) - 0.25).abs() < 1e-12);
        assert!((mixing_correlation_torus(1.0, &a, &b, 0.5) + 0.25).abs() < 1e-12);
        // triangular wave: C(t) = 1/4 − frac(t) on [0, 1/2]
        for &t in &[0.1, 0.2, 0.33, 0.45] {
            let want = 0.25 - t;
            assert!((mixing_correlation_torus(1.0, &a, &b, t) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn torus_mixing_cesaro_mean_is_one_eighth() {
        let a = CircleSet::new(&[(0.0, 0.5)]).unwrap();
        let b = CircleSet::new(&[(0.0, 0.5)]).unwrap();
        let grid = TimeGrid::new(0.0, 0.001, 100_000).unwrap();
        let s = Signal::sample(grid, |t| {
            c(mixing_correlation_torus(1.0, &a, &b, t).abs(), 0.0)
        })
        .unwrap();
        let mean = running_mean(&s, Transform::Abs);
        let last = mean.values().last().unwrap().re;
        assert!((last - 0.125).abs() < 1e-3, "mean {last}");
    }

    #[test]
    fn monte_carlo_mixing_on_torus_agrees_roughly() {
        let flow = crate::backends::Flow::torus_rotation(1.0, 1e-2).unwrap();
        let a = CircleSet::new(&[(0.0, 0.5)]).unwrap();
        let b = CircleSet::new(&[(0.0, 0.5)]).unwrap();
        let in_a = |s: &[f64]| a.contains(s[0]);
        let in_b = |s: &[f64]| b.contains(s[0]);
        let (corr, stderr) =
            mixing_correlation_monte_carlo(&flow, &in_a, &in_b, 0.25, &[(0.0, 1.0)], 4000, 7)
                .unwrap();
        let exact = mixing_correlation_torus(1.0, &a, &b, 0.25);
        assert!((corr - exact).abs() < 4.0 * stderr + 0.02, "corr {corr} vs {exact}");
    }

    #[test]
    fn monte_carlo_requires_budget() {
        let flow = crate::backends::Flow::torus_rotation(1.0, 1e-2).unwrap();
        let yes = |_: &[f64]| true;
        assert!(
            mixing_correlation_monte_carlo(&flow, &yes, &yes, 1.0, &[(0.0, 1.0)], 0, 1).is_err()
        );
    }

    #[test]
    fn recurrence_check_periodic_signal() {
        let grid = TimeGrid::new(0.0, 0.01, 10_000).unwrap(); // T = 100
        let s = Signal::sample(grid, |t| c(t.sin(), 0.0)).unwrap();
        let rep = recurrence_check(&s, 0.5, (50.0, 100.0));
        // |sin| peaks every π
        let p = rep.return_period.unwrap();
        assert!((p - core::f64::consts::PI).abs() < 0.05, "period {p}");
        assert!(rep.every_window_covered);
        assert!(rep.peaks_in_window >= 14);
    }

    #[test]
    fn recurrence_check_single_bump_is_not_covered() {
        let grid = TimeGrid::new(0.0, 0.01, 10_000).unwrap();
        let s = Signal::sample(grid, |t| {
            c((-((t - 10.0) * (t - 10.0))).exp(), 0.0)
        })
        .unwrap();
        let rep = recurrence_check(&s, 0.5, (50.0, 100.0));
        assert_eq!(rep.peaks_in_window, 0);
        assert!(rep.return_period.is_none());
        assert!(!rep.every_window_covered);
    }

    #[test]
    fn plateau_detection_on_decaying_series() {
        let series: Vec<f64> = (0..200).map(|k| (-0.1 * k as f64).exp() + 1.0).collect();
        let idx = plateau_index(&series, 10, 0.01).unwrap();
        assert!(idx > 10 && idx < 150);
        assert!(plateau_index(&series, 10, 1e-12).is_none());
        assert!(plateau_index(&[1.0, 2.0], 5, 0.1).is_none());
    }

    #[test]
    fn classify_stable_matrix_gives_weak_evidence() {
        let backend = matrix_backend(&[c(-1.0, 0.0), c(-1.0, 0.0)]);
        let pair = vec_pair(ComplexVector::ones(2), ComplexVector::ones(2));
        let config = ClassifyConfig::with_grid(TimeGrid::new(0.0, 0.01, 20_000).unwrap());
        let rep = classify(&backend, &[pair], &config).unwrap();
        assert_eq!(rep.verdict, Verdict::WeakStabilityEvidence);
        assert_eq!(rep.imaginary_eigen_count, Some(0));
    }

    #[test]
    fn classify_imaginary_eigenvalue_is_not_almost_weak() {
        let backend = matrix_backend(&[c(0.0, 1.0), c(-1.0, 0.0)]);
        let pair = vec_pair(ComplexVector::basis(2, 0), ComplexVector::basis(2, 0));
        let config = ClassifyConfig::with_grid(TimeGrid::new(0.0, 0.01, 10_000).unwrap());
        let rep = classify(&backend, &[pair], &config).unwrap();
        assert_eq!(rep.verdict, Verdict::NotAlmostWeak);
        assert_eq!(rep.imaginary_eigen_count, Some(1));
        assert!(rep.abel_limit_estimate.unwrap() > config.abel_floor);
    }

    #[test]
    fn classify_verdict_invariant_under_rescaling() {
        let backend = matrix_backend(&[c(-0.5, 0.5), c(-1.0, -1.0)]);
        let x = ComplexVector::new(alloc::vec![c(1.0, 0.3), c(-0.2, 0.9)]).unwrap();
        let y = ComplexVector::new(alloc::vec![c(0.4, -0.1), c(1.0, 0.5)]).unwrap();
        let config = ClassifyConfig::with_grid(TimeGrid::new(0.0, 0.01, 20_000).unwrap());
        let rep1 = classify(
            &backend,
            &[vec_pair(x.clone(), y.clone())],
            &config,
        )
        .unwrap();
        let rep2 = classify(
            &backend,
            &[vec_pair(x.scaled(c(37.0, -4.0)), y.scaled(c(0.001, 0.002)))],
            &config,
        )
        .unwrap();
        assert_eq!(rep1.verdict, rep2.verdict);
        assert!((rep1.cesaro_abs_tail - rep2.cesaro_abs_tail).abs() < 1e-9);
    }

    #[test]
    fn classify_skips_infeasible_abel_ladder_on_large_generic_pairs() {
        // large structured measure but a non-uniform observation pair: no
        // orbit fast path, so the ladder must be skipped, not attempted
        let mu = DiscreteMeasure::cantor(13).unwrap();
        let n = mu.len();
        let backend = Backend::Multiplication(MultiplicationSemigroup::new(mu).unwrap());
        let mut x = ComplexVector::ones(n);
        x.entries_mut()[0] = c(2.0, 0.0);
        let pair = vec_pair(x, ComplexVector::ones(n));
        let config = ClassifyConfig::with_grid(TimeGrid::new(0.0, 0.01, 4_000).unwrap());
        let rep = classify(&backend, &[pair], &config).unwrap();
        assert!(rep.abel_ladder_values.is_empty());
        assert!(rep.abel_limit_estimate.is_none());
        assert!(rep.skipped.iter().any(|s| s.contains("abel ladder")));
    }

    #[test]
    fn classify_cantor_is_almost_weak_only() {
        // moderate depth keeps the unit test fast (atom count above the
        // time-domain cutoff, so the abel route is the orbit-side one); the
        // acceptance suite runs depth 20 at the full horizon
        let mu = DiscreteMeasure::cantor(13).unwrap();
        let n = mu.len();
        let backend = Backend::Multiplication(MultiplicationSemigroup::new(mu).unwrap());
        let ones = ComplexVector::ones(n);
        let pair = vec_pair(ones.clone(), ones);
        let mut config = ClassifyConfig::with_grid(TimeGrid::new(0.0, 0.01, 400_000).unwrap());
        config.adversarial_probes = (1..=6)
            .map(|k| 2.0 * core::f64::consts::PI * 3.0f64.powi(k))
            .collect();
        let rep = classify(&backend, &[pair], &config).unwrap();
        assert_eq!(rep.verdict, Verdict::AlmostWeakOnlyEvidence,
            "cesaro {} recurrence {} abel {:?}",
            rep.cesaro_abs_tail, rep.recurrence_floor_observed, rep.abel_limit_estimate);
        assert!(rep.imaginary_eigen_count.is_none());
    }
}
