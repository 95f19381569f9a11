//! The acceptance suite: quantitative desk-scale checks covering every
//! stability functional the library computes, each pinned to an explicit
//! tolerance. `run_suite` prints one pass/fail line per criterion; the same
//! functions back the `acceptance` integration-test target.
//!
//! The `Fast` suite shrinks instance counts and measure depths; every
//! tolerance stays identical to the `Full` suite.

use std::f64::consts::{LN_2, PI};
use std::time::Instant;

use semistab_core::backends::{
    cayley_image, cogenerator_of, foguel_split, mean_ergodic_projection, Backend,
    Flow, Functional, KoopmanSemigroup, MatrixGenerator, MatrixSemigroup,
    MultiplicationSemigroup, Observable, ObservationPair,
};
use semistab_core::diagnostics::{
    classify, mixing_correlation_torus, plateau_index, recurrence_check, CircleSet,
    ClassifyConfig, Verdict,
};
use semistab_core::grid::{running_mean, Signal, TimeGrid, Transform};
use semistab_core::linalg::{expm, principal_angle, CMat};
use semistab_core::measures::{
    cantor_infinite_product_abs, fourier_transform, fourier_transform_direct, DiscreteMeasure,
};
use semistab_core::resolvent::ResolventProbe;
use semistab_core::rng::SplitMix64;
use semistab_core::semigroup::SemigroupEvaluator;
use semistab_core::synth;
use semistab_core::vector::ComplexVector;
use semistab_core::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Fast,
    Full,
}

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    pub seconds: f64,
}

struct Checker {
    passed: bool,
    details: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Self {
            passed: true,
            details: Vec::new(),
        }
    }

    /// Records `value <= threshold`.
    fn le(&mut self, label: &str, value: f64, threshold: f64) -> bool {
        let ok = value <= threshold;
        self.passed &= ok;
        self.details.push(format!(
            "{} {label}: {value:.6e} <= {threshold:.3e}",
            mark(ok)
        ));
        ok
    }

    /// Records `value >= threshold`.
    fn ge(&mut self, label: &str, value: f64, threshold: f64) -> bool {
        let ok = value >= threshold;
        self.passed &= ok;
        self.details.push(format!(
            "{} {label}: {value:.6e} >= {threshold:.3e}",
            mark(ok)
        ));
        ok
    }

    fn is_true(&mut self, label: &str, ok: bool) -> bool {
        self.passed &= ok;
        self.details.push(format!("{} {label}", mark(ok)));
        ok
    }

    fn note(&mut self, text: String) {
        self.details.push(format!("       {text}"));
    }

    fn finish(self, id: &'static str, name: &'static str, started: Instant) -> CriterionOutcome {
        CriterionOutcome {
            id,
            name,
            passed: self.passed,
            details: self.details,
            seconds: started.elapsed().as_secs_f64(),
        }
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "[ok]  "
    } else {
        "[FAIL]"
    }
}

fn ones_pair(dim: usize) -> ObservationPair {
    let ones = ComplexVector::ones(dim);
    ObservationPair::Vectors {
        x: ones.clone(),
        y: ones,
    }
}

fn scalar_semigroup(z: C64) -> MatrixSemigroup {
    MatrixSemigroup::new(MatrixGenerator::new(CMat::diag(&[z])).unwrap()).unwrap()
}

/// Criterion 1 — Cantor dichotomy: Cesàro decay of the `(𝟙,𝟙)` orbit at
/// horizon 10⁴ coexisting with the `|Fμ(2π·3ⁿ)| ≈ 0.3714` recurrence floor;
/// classifier verdict `almost-weak-only-evidence`.
pub fn criterion_1(suite: Suite) -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    let depth = match suite {
        Suite::Full => 20,
        Suite::Fast => 16,
    };
    let mu = DiscreteMeasure::cantor(depth).unwrap();
    let dim = mu.len();
    let grid = TimeGrid::new(0.0, 0.01, 1_000_000).unwrap(); // T = 10^4
    let backend = Backend::Multiplication(MultiplicationSemigroup::new(mu.clone()).unwrap());
    let pair = ones_pair(dim);

    let orbit = backend.weak_orbit(&pair, &grid).unwrap();
    let mean = running_mean(&orbit, Transform::Abs);
    let at = |t: f64| mean.values()[grid.index_at_or_after(t)].re;
    let (m_quarter, m_half, m_full) = (at(2500.0), at(5000.0), at(10_000.0));
    c.le("running mean of |orbit| at T = 10^4", m_full, 0.05);
    c.is_true(
        "running mean nonincreasing over the last three half-horizons",
        m_quarter >= m_half && m_half >= m_full,
    );
    c.note(format!(
        "m(T/4) = {m_quarter:.4}, m(T/2) = {m_half:.4}, m(T) = {m_full:.4}"
    ));

    let oracle = cantor_infinite_product_abs(2.0 * PI);
    c.note(format!("infinite-product oracle |Fμ(2π·3^n)| = {oracle:.5}"));
    for n in 1..=6 {
        let t = 2.0 * PI * 3.0f64.powi(n);
        let v = fourier_transform(&mu, t).norm();
        c.ge(&format!("|Fμ(2π·3^{n})|"), v, 0.2);
        c.le(
            &format!("|Fμ(2π·3^{n})| deviation from oracle"),
            (v - oracle).abs(),
            2e-3,
        );
    }

    let mut config = ClassifyConfig::with_grid(grid);
    config.abel_ladder = vec![0.05, 0.0125, 0.003125, 0.00078125];
    config.adversarial_probes = (1..=6).map(|n| 2.0 * PI * 3.0f64.powi(n)).collect();
    let report = classify(&backend, &[pair], &config).unwrap();
    c.is_true(
        "classifier verdict is almost-weak-only-evidence",
        report.verdict == Verdict::AlmostWeakOnlyEvidence,
    );
    c.note(format!(
        "cesaro tail {:.4}, recurrence floor {:.4}, abel limit {:?}",
        report.cesaro_abs_tail, report.recurrence_floor_observed, report.abel_limit_estimate
    ));
    let seconds = started.elapsed().as_secs_f64();
    c.le("runtime (s)", seconds, 60.0);
    c.finish("1", "Cantor dichotomy", started)
}

/// Criterion 2 — Plancherel identity on random stable generators at
/// `a ∈ {1, 0.1}` with relative error at most 1e−3.
pub fn criterion_2(suite: Suite) -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    let trials = match suite {
        Suite::Full => 20,
        Suite::Fast => 6,
    };
    let mut rng = SplitMix64::new(2001);
    let mut worst = 0.0f64;
    for trial in 0..trials {
        let a_mat = synth::random_stable_generator(&mut rng, 5, -2.0, -0.1, 3.0);
        let sg = MatrixSemigroup::new(MatrixGenerator::new(a_mat).unwrap()).unwrap();
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        let x = synth::random_unit_vector(&mut rng, 5);
        let y = synth::random_unit_vector(&mut rng, 5);
        for &a in &[1.0, 0.1] {
            let check = probe.plancherel_check(&x, &y, a, 10.0 / a).unwrap();
            worst = worst.max(check.rel_error);
            if check.rel_error > 1e-3 {
                c.note(format!(
                    "trial {trial}, a = {a}: lhs {:.6e} rhs {:.6e}",
                    check.lhs_frequency, check.rhs_time
                ));
            }
        }
    }
    c.le(
        &format!("worst relative error over {trials} generators, a ∈ {{1, 0.1}}"),
        worst,
        1e-3,
    );
    let seconds = started.elapsed().as_secs_f64();
    c.le("runtime (s)", seconds, 30.0);
    c.finish("2", "Plancherel identity", started)
}

/// Criterion 3 — eigenvalue detection chain: the Abel ladder verdict agrees
/// with the eigenvalue scan on seeded/unseeded generators, with the scalar
/// closed forms pinned to 1e−3.
pub fn criterion_3(suite: Suite) -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    let trials = match suite {
        Suite::Full => 20,
        Suite::Fast => 6,
    };
    let mut rng = SplitMix64::new(3003);
    let ladder = [0.1, 0.025, 0.00625];
    let mut agreements = 0usize;
    for trial in 0..trials {
        let seeded = trial % 2 == 0;
        let n = 4;
        let (a_mat, omega) = if seeded {
            let (m, w) = synth::seeded_imaginary_generator(&mut rng, n, -2.0, -0.15, 2.0);
            (m, Some(w))
        } else {
            (
                synth::random_stable_generator(&mut rng, n, -2.0, -0.15, 2.0),
                None,
            )
        };
        let sg = MatrixSemigroup::new(MatrixGenerator::new(a_mat).unwrap()).unwrap();
        let eigen_detected = sg.certificate().imaginary_count > 0;
        let probe = ResolventProbe::for_matrix(&sg)
            .unwrap()
            .with_truncation(80.0, 0.01);
        let mut limit = 0.0f64;
        let mut pointwise_at_seed = 0.0f64;
        for k in 0..n {
            let e_k = ComplexVector::basis(n, k);
            let vals: Vec<f64> = ladder
                .iter()
                .map(|&a| probe.abel_square_integral(&e_k, &e_k, a).unwrap().value)
                .collect();
            let (a0, v0) = (ladder[1], vals[1]);
            let (a1, v1) = (ladder[2], vals[2]);
            limit = limit.max((v1 - a1 * (v0 - v1) / (a0 - a1)).max(0.0));
            if let Some(w) = omega {
                pointwise_at_seed =
                    pointwise_at_seed.max(probe.abel_pointwise(&e_k, 0.00625, w).unwrap());
            }
        }
        let abel_detected = limit >= 0.05;
        if abel_detected == eigen_detected && eigen_detected == seeded {
            agreements += 1;
        } else {
            c.note(format!(
                "trial {trial}: seeded={seeded} eigen={eigen_detected} abel={abel_detected} (limit {limit:.4})"
            ));
        }
        if seeded {
            c.ge(
                &format!("trial {trial}: pointwise abel at the seeded frequency"),
                pointwise_at_seed,
                0.2,
            );
        }
    }
    c.is_true(
        &format!("abel verdict agrees with the eigenvalue scan in all {trials} cases"),
        agreements == trials,
    );

    // scalar closed forms
    let x1 = ComplexVector::ones(1);
    let stable = scalar_semigroup(C64::new(-1.0, 0.0));
    let probe = ResolventProbe::for_matrix(&stable).unwrap();
    for &a in &[1.0, 0.5, 0.1, 0.02] {
        let got = probe.abel_square_integral(&x1, &x1, a).unwrap().value;
        let want = PI * a / (a + 1.0);
        c.le(
            &format!("stable scalar |a·I − πa/(a+1)| at a = {a}"),
            (got - want).abs(),
            1e-3,
        );
    }
    let rotating = scalar_semigroup(C64::new(0.0, 1.0));
    let probe = ResolventProbe::for_matrix(&rotating).unwrap();
    for &a in &[1.0, 0.5, 0.1, 0.02] {
        let got = probe.abel_square_integral(&x1, &x1, a).unwrap().value;
        c.le(
            &format!("rotating scalar |a·I − π| at a = {a}"),
            (got - PI).abs(),
            1e-3 * PI,
        );
    }
    c.finish("3", "eigenvalue detection chain", started)
}

/// Criterion 4 — resolvent-square integrability: `∫₀¹ I(a) da = π ln 2` for
/// the stable scalar, monotone `I(a)` everywhere, inverse-Laplace orbit
/// reconstruction at 1e−4.
pub fn criterion_4(suite: Suite) -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    let x1 = ComplexVector::ones(1);

    let stable = scalar_semigroup(C64::new(-1.0, 0.0));
    let probe = ResolventProbe::for_matrix(&stable).unwrap();
    let rep = probe.chill_tomilov(&x1, &x1, 1e-3, 40).unwrap();
    c.le(
        "stable scalar |∫₀¹ I(a) da − π ln 2|",
        (rep.double_integral - PI * LN_2).abs(),
        1e-2,
    );
    c.is_true("I(a) nonincreasing (stable scalar)", rep.monotone_nonincreasing);
    c.le("stable scalar a·I(a) limit estimate", rep.limit_estimate.abs(), 0.02);

    let rotating = scalar_semigroup(C64::new(0.0, 1.0));
    let probe_rot = ResolventProbe::for_matrix(&rotating).unwrap();
    let rep_rot = probe_rot.chill_tomilov(&x1, &x1, 1e-3, 40).unwrap();
    c.is_true("I(a) nonincreasing (rotating scalar)", rep_rot.monotone_nonincreasing);
    c.le(
        "rotating scalar |a·I(a) limit − π|",
        (rep_rot.limit_estimate - PI).abs(),
        0.05,
    );

    let extra = match suite {
        Suite::Full => 4,
        Suite::Fast => 2,
    };
    let mut rng = SplitMix64::new(4004);
    for trial in 0..extra {
        let a_mat = synth::random_stable_generator(&mut rng, 4, -1.5, -0.2, 1.5);
        let sg = MatrixSemigroup::new(MatrixGenerator::new(a_mat).unwrap()).unwrap();
        let probe = ResolventProbe::for_matrix(&sg).unwrap();
        let x = synth::random_unit_vector(&mut rng, 4);
        let y = synth::random_unit_vector(&mut rng, 4);
        let rep = probe.chill_tomilov(&x, &y, 1e-2, 24).unwrap();
        c.is_true(
            &format!("I(a) nonincreasing (random instance {trial})"),
            rep.monotone_nonincreasing,
        );
    }

    // inverse-Laplace reconstruction against the direct orbit
    let mut worst = 0.0f64;
    let mut instances: Vec<MatrixSemigroup> = vec![scalar_semigroup(C64::new(-1.0, 0.0))];
    for _ in 0..2 {
        let a_mat = synth::random_stable_generator(&mut rng, 4, -1.5, -0.2, 1.5);
        instances.push(MatrixSemigroup::new(MatrixGenerator::new(a_mat).unwrap()).unwrap());
    }
    for sg in &instances {
        let n = sg.dim();
        let probe = ResolventProbe::for_matrix(sg).unwrap();
        let x = if n == 1 {
            ComplexVector::ones(1)
        } else {
            synth::random_unit_vector(&mut rng, n)
        };
        let y = x.clone();
        for &t in &[1.0, 2.0, 5.0] {
            let rec = probe.inverse_laplace_orbit(&x, &y, t, 0.5).unwrap();
            let direct = sg.pair(&sg.apply(t, &x).unwrap(), &y).unwrap();
            worst = worst.max((rec - direct).norm());
        }
    }
    c.le(
        "worst inverse-Laplace reconstruction error at t ∈ {1, 2, 5}",
        worst,
        1e-4,
    );
    c.finish("4", "resolvent-square integrability chain", started)
}

/// Criterion 5 — Foguel splitting on planted unitary-conjugated generators.
pub fn criterion_5(suite: Suite) -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    let trials = match suite {
        Suite::Full => 20,
        Suite::Fast => 6,
    };
    let mut rng = SplitMix64::new(5005);
    let mut worst_angle = 0.0f64;
    let mut worst_isometry = 0.0f64;
    let mut worst_diag = 0.0f64;
    let mut dims_ok = true;
    for trial in 0..trials {
        let k = 1 + trial % 2;
        let (a_mat, unitary_basis, stable_basis) =
            synth::foguel_instance(&mut rng, 5, k, 0.5);
        let gen = MatrixGenerator::new(a_mat).unwrap();
        let split = foguel_split(&gen).unwrap();
        if split.w_perp.cols() != k {
            dims_ok = false;
            c.note(format!(
                "trial {trial}: recovered dim {} vs planted {k}",
                split.w_perp.cols()
            ));
            continue;
        }
        worst_angle = worst_angle.max(principal_angle(&split.w_perp, &unitary_basis).unwrap());

        let x_perp = ComplexVector::new(split.w_perp.column(0)).unwrap();
        for step in 0..=20 {
            let t = step as f64;
            let prop = expm(&gen.matrix().scale(C64::new(t, 0.0))).unwrap();
            worst_isometry =
                worst_isometry.max((prop.apply(&x_perp).unwrap().norm() - 1.0).abs());
        }
        let x_w = ComplexVector::new(stable_basis.column(0)).unwrap();
        let prop = expm(&gen.matrix().scale(C64::new(20.0, 0.0))).unwrap();
        let diag = semistab_core::vector::pairing(&prop.apply(&x_w).unwrap(), &x_w)
            .unwrap()
            .norm();
        worst_diag = worst_diag.max(diag);
    }
    c.is_true(
        &format!("recovered unitary dimension matches planted in all {trials} cases"),
        dims_ok,
    );
    c.le("worst principal angle to the planted subspace", worst_angle, 1e-7);
    c.le("worst deviation of ‖T(t)x‖ from 1 on W⊥, t ∈ [0, 20]", worst_isometry, 1e-8);
    c.le("worst |⟨T(20)x, x⟩| for planted x ∈ W (gap ≥ 0.5)", worst_diag, 1e-3);
    c.finish("5", "Foguel splitting", started)
}

/// Criterion 6a — homoclinic flow: integrator validation against the radial
/// closed form and Cesàro decay of the bump-observable Koopman orbit.
pub fn criterion_6a(_suite: Suite) -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    let flow = Flow::homoclinic(1e-3).unwrap();
    let x0 = [0.5, 0.0];

    let grid_check = TimeGrid::new(0.0, 0.1, 200).unwrap(); // t ≤ 20
    let samples = flow.trajectory_samples(&x0, &grid_check).unwrap();
    let mut worst = 0.0f64;
    for (k, t) in grid_check.points().enumerate() {
        let want = 1.0 + (x0[0] - 1.0) * (-t).exp();
        worst = worst.max((samples[k][0] - want).abs());
    }
    c.le("max |r_RK4(t) − (1 + (r₀−1)e^{−t})| up to t = 20 at h = 1e−3", worst, 1e-6);

    let ks = KoopmanSemigroup::new(flow);
    let observable = Observable::CircleBump {
        center: PI,
        width: 0.5,
        radial_width: 0.5,
    };
    let grid = TimeGrid::new(0.0, 0.05, 40_000).unwrap(); // T = 2000
    let orbit = ks
        .weak_orbit(&observable, &Functional::Point(x0.to_vec()), &grid)
        .unwrap();
    let mean = running_mean(&orbit, Transform::Abs);
    let at = |t: f64| mean.values()[grid.index_at_or_after(t)].re;
    let (m_quarter, m_half, m_full) = (at(500.0), at(1000.0), at(2000.0));
    c.le("running mean of |orbit| at T = 2000", m_full, 0.1);
    c.is_true(
        "running mean trending down (m(T) ≤ m(T/2) ≤ m(T/4))",
        m_full <= m_half && m_half <= m_quarter,
    );
    c.note(format!(
        "m(T/4) = {m_quarter:.5}, m(T/2) = {m_half:.5}, m(T) = {m_full:.5}"
    ));
    c.finish("6a", "homoclinic flow: trajectory and Cesàro decay", started)
}

/// Criterion 6b — homoclinic recurrence: at least one peak ≥ 0.5 in every
/// window of the empirically measured return period inside `[T/2, T]`.
///
/// This criterion fails for the given vector field: `1 − r` collapses
/// exponentially, so every slow-zone crossing after the first stalls and
/// the trajectory is captured by the circle equilibrium after a single
/// mark passage — the orbit has no recurrent peaks at any measurable
/// period. The check is implemented exactly as stated and reports the
/// failure honestly.
pub fn criterion_6b(_suite: Suite) -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    let flow = Flow::homoclinic(1e-3).unwrap();
    let ks = KoopmanSemigroup::new(flow);
    let observable = Observable::CircleBump {
        center: PI,
        width: 0.5,
        radial_width: 0.5,
    };
    let grid = TimeGrid::new(0.0, 0.05, 40_000).unwrap(); // T = 2000
    let orbit = ks
        .weak_orbit(&observable, &Functional::Point(vec![0.5, 0.0]), &grid)
        .unwrap();
    let rec = recurrence_check(&orbit, 0.5, (1000.0, 2000.0));
    c.note(format!(
        "peaks ≥ 0.5 total: {}, in [T/2, T]: {}, return period: {:?}",
        rec.peaks.len(),
        rec.peaks_in_window,
        rec.return_period
    ));
    c.is_true(
        "at least one peak ≥ 0.5 in every window of the measured return period in [T/2, T]",
        rec.every_window_covered,
    );
    c.finish("6b", "homoclinic flow: recurrence in the tail window", started)
}

/// Criterion 7 — cogenerator transfer: spectral mapping at 1e−8 and matched
/// norm plateaus within 0.02.
pub fn criterion_7(suite: Suite) -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    let trials = match suite {
        Suite::Full => 20,
        Suite::Fast => 6,
    };
    let mut rng = SplitMix64::new(7007);
    let mut worst_map = 0.0f64;
    let mut mapping_ok = true;
    let mut worst_plateau_gap = 0.0f64;
    let mut plateaus_found = true;
    for trial in 0..trials {
        let k = 1 + trial % 2;
        let a_mat = synth::random_contractive_generator(&mut rng, 4, k);
        let gen = MatrixGenerator::new(a_mat).unwrap();
        let cog = cogenerator_of(&gen).unwrap();
        let eig_g = cog.eigenvalues().unwrap();
        for la in gen.eigenvalues().unwrap() {
            let image = cayley_image(la);
            let best = eig_g
                .iter()
                .map(|z| (z - image).norm())
                .fold(f64::INFINITY, f64::min);
            worst_map = worst_map.max(best);
            // |eig G| = 1 ⟺ Re eig A = 0 within 1e−8
            let on_circle = eig_g
                .iter()
                .any(|z| (z - image).norm() < 1e-6 && (z.norm() - 1.0).abs() <= 1e-8);
            if (la.re.abs() <= 1e-8) != on_circle {
                mapping_ok = false;
                c.note(format!("trial {trial}: eigenvalue {la} breaks the circle mapping"));
            }
        }

        // matched norm plateaus: lim ‖T(t)x‖ = lim ‖Gⁿx‖
        let x = synth::random_unit_vector(&mut rng, 4);
        let dt = 0.5;
        let step = expm(&gen.matrix().scale(C64::new(dt, 0.0))).unwrap();
        let mut state = x.clone();
        let mut semigroup_norms = vec![state.norm()];
        for _ in 0..600 {
            state = step.apply(&state).unwrap();
            semigroup_norms.push(state.norm());
        }
        let power_norms = cog.power_norms(&x, 8000).unwrap();
        let st = plateau_index(&semigroup_norms, 40, 0.002);
        let pn = plateau_index(&power_norms, 200, 0.002);
        match (st, pn) {
            (Some(i), Some(j)) => {
                let gap = (semigroup_norms[i] - power_norms[j]).abs();
                worst_plateau_gap = worst_plateau_gap.max(gap);
            }
            _ => {
                plateaus_found = false;
                c.note(format!("trial {trial}: no plateau found"));
            }
        }
    }
    c.le("worst spectral-mapping mismatch |eig(G) − cayley(eig(A))|", worst_map, 1e-8);
    c.is_true("unit circle ⟺ imaginary axis classification agrees", mapping_ok);
    c.is_true("norm plateaus detected for every instance", plateaus_found);
    c.le(
        "worst |lim ‖T(t)x‖ − lim ‖Gⁿx‖| at matched plateaus",
        worst_plateau_gap,
        0.02,
    );
    c.finish("7", "cogenerator stability transfer", started)
}

/// Criterion 8 — mixing diagnostics of the torus rotation.
pub fn criterion_8(_suite: Suite) -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    let set_a = CircleSet::new(&[(0.0, 0.5)]).unwrap();
    let set_b = CircleSet::new(&[(0.0, 0.5)]).unwrap();
    // closed form: C(t) = 1/4 − s on [0, 1/2], s − 3/4 on [1/2, 1], s = frac t
    let closed = |t: f64| {
        let s = t.fract();
        if s <= 0.5 {
            0.25 - s
        } else {
            s - 0.75
        }
    };
    let mut worst = 0.0f64;
    let mut k = 0;
    while k <= 4000 {
        let t = k as f64 * 0.025;
        let got = mixing_correlation_torus(1.0, &set_a, &set_b, t);
        worst = worst.max((got - closed(t)).abs());
        k += 1;
    }
    c.le("max |C(t) − triangular closed form| on [0, 100]", worst, 1e-10);

    let grid = TimeGrid::new(0.0, 0.001, 100_000).unwrap();
    let signal = Signal::sample(grid, |t| {
        C64::new(mixing_correlation_torus(1.0, &set_a, &set_b, t), 0.0)
    })
    .unwrap();
    let mean = running_mean(&signal, Transform::Abs);
    let cesaro = mean.values().last().unwrap().re;
    c.le("|Cesàro mean of |C| over [0, 100] − 1/8|", (cesaro - 0.125).abs(), 1e-3);
    c.is_true(
        "reported as not weakly mixing (Cesàro mean of |C| stays positive)",
        cesaro > 0.05,
    );
    c.finish("8", "mixing diagnostics", started)
}

/// Criterion 9 — mean ergodic projection for `A = diag(0, i, −1)`.
pub fn criterion_9(_suite: Suite) -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    let gen = MatrixGenerator::new(CMat::diag(&[
        C64::new(0.0, 0.0),
        C64::new(0.0, 1.0),
        C64::new(-1.0, 0.0),
    ]))
    .unwrap();
    for &horizon in &[50.0, 100.0, 200.0] {
        let report = mean_ergodic_projection(&gen, horizon).unwrap();
        // P_exact must be diag(1, 0, 0)
        let mut want = CMat::zeros(3, 3);
        want[(0, 0)] = C64::new(1.0, 0.0);
        let exact_err = report.p_exact.sub(&want).max_abs();
        c.le(&format!("‖P_exact − diag(1,0,0)‖ at T = {horizon}"), exact_err, 1e-10);
        c.le(
            &format!("‖(1/T)∫e^(sA)ds − diag(1,0,0)‖ at T = {horizon}"),
            report.deviation,
            3.0 / horizon,
        );
    }
    c.finish("9", "mean ergodic projection", started)
}

/// Criterion 10 — cross-module coherence: orbit ≡ transform on the
/// multiplication backend and scaling-invariant verdicts.
pub fn criterion_10(suite: Suite) -> CriterionOutcome {
    let started = Instant::now();
    let mut c = Checker::new();
    // above the time-domain cutoff, so the classifier's abel route is the
    // orbit-side one on the full grid
    let depth = 13;
    let _ = suite;
    let mu = DiscreteMeasure::cantor(depth).unwrap();
    let dim = mu.len();
    let sg = MultiplicationSemigroup::new(mu.clone()).unwrap();
    let ones = ComplexVector::ones(dim);
    let grid = TimeGrid::new(0.0, 0.025, 2000).unwrap();
    // the orbit goes through the structured product form; compare it with
    // the definitional atom sum
    let orbit = sg.weak_orbit(&ones, &ones, &grid).unwrap();
    let mut worst = 0.0f64;
    for (k, t) in grid.points().enumerate() {
        worst = worst.max((orbit.values()[k] - fourier_transform_direct(&mu, t)).norm());
    }
    c.le("max |⟨T(t)𝟙,𝟙⟩ − Fμ(t)| pointwise (definitional sum)", worst, 1e-12);

    // rescaling invariance of the classifier
    let backend = Backend::Multiplication(sg);
    let config = ClassifyConfig::with_grid(TimeGrid::new(0.0, 0.01, 200_000).unwrap());
    let base_pair = ObservationPair::Vectors {
        x: ones.clone(),
        y: ones.clone(),
    };
    let scaled_pair = ObservationPair::Vectors {
        x: ones.scaled(C64::new(-17.0, 3.0)),
        y: ones.scaled(C64::new(0.004, -0.002)),
    };
    let rep1 = classify(&backend, &[base_pair], &config).unwrap();
    let rep2 = classify(&backend, &[scaled_pair], &config).unwrap();
    c.is_true(
        "classifier verdict invariant under nonzero rescaling of (x, y)",
        rep1.verdict == rep2.verdict,
    );
    c.le(
        "cesaro tail difference under rescaling",
        (rep1.cesaro_abs_tail - rep2.cesaro_abs_tail).abs(),
        1e-9,
    );

    let backend_m = Backend::Matrix(
        MatrixSemigroup::new(
            MatrixGenerator::new(CMat::diag(&[C64::new(-0.5, 0.5), C64::new(-1.0, -1.0)]))
                .unwrap(),
        )
        .unwrap(),
    );
    let x = ComplexVector::new(vec![C64::new(1.0, 0.3), C64::new(-0.2, 0.9)]).unwrap();
    let y = ComplexVector::new(vec![C64::new(0.4, -0.1), C64::new(1.0, 0.5)]).unwrap();
    let config_m = ClassifyConfig::with_grid(TimeGrid::new(0.0, 0.01, 20_000).unwrap());
    let rep1 = classify(
        &backend_m,
        &[ObservationPair::Vectors {
            x: x.clone(),
            y: y.clone(),
        }],
        &config_m,
    )
    .unwrap();
    let rep2 = classify(
        &backend_m,
        &[ObservationPair::Vectors {
            x: x.scaled(C64::new(250.0, -3.0)),
            y: y.scaled(C64::new(0.0, 1e-3)),
        }],
        &config_m,
    )
    .unwrap();
    c.is_true(
        "matrix-backend verdict invariant under rescaling",
        rep1.verdict == rep2.verdict,
    );
    c.finish("10", "cross-module coherence", started)
}

/// Runs the whole suite in order.
pub fn run_suite(suite: Suite) -> Vec<CriterionOutcome> {
    vec![
        criterion_1(suite),
        criterion_2(suite),
        criterion_3(suite),
        criterion_4(suite),
        criterion_5(suite),
        criterion_6a(suite),
        criterion_6b(suite),
        criterion_7(suite),
        criterion_8(suite),
        criterion_9(suite),
        criterion_10(suite),
    ]
}

/// Prints the outcome lines; returns true iff everything passed.
pub fn print_outcomes(outcomes: &[CriterionOutcome]) -> bool {
    let mut all = true;
    for outcome in outcomes {
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "[{status}] criterion {:<3} {} ({:.2}s)",
            outcome.id, outcome.name, outcome.seconds
        );
        for d in &outcome.details {
            println!("    {d}");
        }
        all &= outcome.passed;
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} criteria passed", outcomes.len());
    all
}
