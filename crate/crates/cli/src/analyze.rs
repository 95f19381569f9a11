//! The analysis run: backend construction, classification, backend-specific
//! diagnostics, and artifact emission.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use semistab_core::backends::{
    cogenerator_of, foguel_split, jgdl_split, mean_ergodic_projection, Backend, FlowField,
    ObservationPair,
};
use semistab_core::diagnostics::{classify, density_one_extract, recurrence_check};
use semistab_core::measures::{rajchman_diagnostic, wiener_average, DecayVerdict};

use crate::config::RunConfig;
use crate::emit;
use crate::report::{
    criteria_from, verdict_label, AbelPoint, Artifacts, CogeneratorExtras, DensityExtras, Extras,
    KoopmanExtras, MatrixExtras, MeanErgodicExtras, MeasureExtras, RajchmanExtras,
    EpsilonDensity, RecurrenceExtras, Report, SplitDims, ToolInfo, WienerExtras,
};

/// Runs the full analysis and writes `report.json`, `signals/*.csv` and
/// `plots/*.gp` into the output directory. Returns the report.
pub fn run_analyze(config: &RunConfig, out_dir: &Path) -> Result<Report> {
    config.validate()?;
    let backend = config.backend()?;
    let grid = config.grid()?;
    let pairs = config.observation_pairs(&backend)?;
    let classify_config = config.classify_config()?;

    let stability = classify(&backend, &pairs, &classify_config)
        .map_err(|e| anyhow::anyhow!("classification failed: {e}"))?;

    fs::create_dir_all(out_dir.join("signals"))?;
    fs::create_dir_all(out_dir.join("plots"))?;

    let mut artifacts = Artifacts::default();
    let mut first_orbit = None;
    for (idx, pair) in pairs.iter().enumerate() {
        let orbit = backend
            .weak_orbit(pair, &grid)
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        let csv_name = format!("signals/orbit_{idx}.csv");
        let plot_name = format!("plots/orbit_{idx}.gp");
        emit::write_signal_csv(&out_dir.join(&csv_name), &orbit)?;
        emit::write_plot_script(
            &out_dir.join(&plot_name),
            &format!("../{csv_name}"),
            &format!("weak orbit {idx}"),
        )?;
        artifacts.signals.push(csv_name);
        artifacts.plots.push(plot_name);
        if idx == 0 {
            first_orbit = Some(orbit);
        }
    }
    if !stability.abel_ladder_values.is_empty() {
        let name = "signals/abel_ladder.csv".to_string();
        emit::write_curve_csv(
            &out_dir.join(&name),
            "a,value",
            &stability.abel_ladder_values,
        )?;
        artifacts.signals.push(name);
    }
    if let Backend::Multiplication(ms) = &backend {
        let profile = semistab_core::measures::FourierProfile::sample(
            ms.measure(),
            &grid,
            &config.adversarial_probes,
        )
        .map_err(|e| anyhow::anyhow!("{e}"))?;
        let name = "signals/fourier_profile.csv".to_string();
        emit::write_fourier_csv(&out_dir.join(&name), &profile)?;
        artifacts.signals.push(name);
    }

    let mut extras = backend_extras(config, &backend, &pairs, &grid)?;
    if let Some(orbit) = &first_orbit {
        let ladder = [0.5, 0.2, 0.1];
        let rep = density_one_extract(orbit, &ladder, 10, config.tolerances.cesaro_tol)
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        extras.density = Some(DensityExtras {
            excised_densities: rep
                .excised_densities
                .iter()
                .map(|&(epsilon, density)| EpsilonDensity { epsilon, density })
                .collect(),
            m_fraction: rep.m_fraction,
            verdict_positive: rep.verdict_positive,
            density_tol: rep.density_tol,
            blocks: rep.blocks,
        });
    }

    let report = Report {
        schema_version: crate::config::SCHEMA_VERSION,
        tool: ToolInfo {
            name: "semistab".into(),
            version: env!("CARGO_PKG_VERSION").into(),
        },
        config: config.clone(),
        verdict: verdict_label(stability.verdict).into(),
        criteria: criteria_from(&stability),
        extras,
        skipped: stability.skipped.iter().map(|s| s.to_string()).collect(),
        artifacts,
    };
    let json = serde_json::to_string_pretty(&report)?;
    fs::write(out_dir.join("report.json"), json)
        .with_context(|| format!("cannot write report into {}", out_dir.display()))?;
    Ok(report)
}

fn backend_extras(
    config: &RunConfig,
    backend: &Backend,
    pairs: &[ObservationPair],
    grid: &semistab_core::TimeGrid,
) -> Result<Extras> {
    let mut extras = Extras::default();
    match backend {
        Backend::Matrix(ms) => {
            let cert = ms.certificate();
            let gen = ms.generator();
            let dissipativity = ms.dissipativity_bound().map_err(|e| anyhow::anyhow!("{e}"))?;
            let me_horizon = grid.t_max().min(200.0);
            let me = mean_ergodic_projection(gen, me_horizon).map_err(|e| anyhow::anyhow!("{e}"))?;
            let kernel_dim = (0..gen.dim())
                .map(|i| me.p_exact[(i, i)].re)
                .sum::<f64>()
                .round() as usize;

            let jgdl = if cert.bounded {
                let split = jgdl_split(gen, config.tolerances.tol_im)
                    .map_err(|e| anyhow::anyhow!("{e}"))?;
                Some(SplitDims {
                    reversible_or_unitary: split.x_r.cols(),
                    stable: split.x_s.cols(),
                })
            } else {
                None
            };
            let foguel = if dissipativity <= 1e-9 * gen.scale().max(1.0) {
                let split = foguel_split(gen).map_err(|e| anyhow::anyhow!("{e}"))?;
                Some(SplitDims {
                    reversible_or_unitary: split.w_perp.cols(),
                    stable: split.w.cols(),
                })
            } else {
                None
            };
            let cogenerator = match cogenerator_of(gen) {
                Ok(cog) => {
                    let eigs = cog.eigenvalues().map_err(|e| anyhow::anyhow!("{e}"))?;
                    let on_circle = eigs
                        .iter()
                        .filter(|z| (z.norm() - 1.0).abs() <= 1e-8)
                        .count();
                    Some(CogeneratorExtras {
                        norm: cog.norm(),
                        unit_circle_eigenvalues: on_circle,
                    })
                }
                Err(_) => None,
            };
            extras.matrix = Some(MatrixExtras {
                s0_estimate: cert.max_re,
                bounded: cert.bounded,
                imaginary_defective: cert.imaginary_defective,
                dissipativity,
                mean_ergodic: MeanErgodicExtras {
                    horizon: me_horizon,
                    deviation: me.deviation,
                    kernel_dim,
                },
                jgdl,
                foguel,
                cogenerator,
            });
        }
        Backend::Multiplication(ms) => {
            let mu = ms.measure();
            let window = (grid.t_max() * 0.2).max(grid.dt() * 8.0);
            let rajchman = rajchman_diagnostic(
                mu,
                grid,
                window,
                &config.adversarial_probes,
                config.tolerances.weak_tol,
            )
            .map_err(|e| anyhow::anyhow!("{e}"))?;
            let wiener_horizon = grid.t_max().min(1000.0);
            let wiener =
                wiener_average(mu, wiener_horizon).map_err(|e| anyhow::anyhow!("{e}"))?;
            extras.measure = Some(MeasureExtras {
                total_mass: mu.total_mass(),
                is_probability: mu.is_probability(),
                atom_mass_sum_squares: mu.atom_mass_sum_squares(),
                rajchman: RajchmanExtras {
                    verdict: match rajchman.verdict {
                        DecayVerdict::DecayingEvidence => "decaying-evidence".into(),
                        DecayVerdict::NonDecayingEvidence => "non-decaying-evidence".into(),
                    },
                    floor: rajchman.floor,
                    trend_slope: rajchman.trend_slope,
                    tol: rajchman.tol,
                    window_sups: rajchman
                        .window_sups
                        .iter()
                        .map(|&(a, value)| AbelPoint { a, value })
                        .collect(),
                    adversarial: rajchman
                        .adversarial
                        .iter()
                        .map(|&(a, value)| AbelPoint { a, value })
                        .collect(),
                },
                wiener: WienerExtras {
                    horizon: wiener_horizon,
                    value: wiener,
                    atom_floor: mu.atom_mass_sum_squares(),
                },
            });
        }
        Backend::Koopman(ks) => {
            // radial closed form is available for the homoclinic preset
            let radial_validation_error = match (&ks.flow().field, pairs.first()) {
                (
                    FlowField::Homoclinic,
                    Some(ObservationPair::Koopman {
                        functional: semistab_core::backends::Functional::Point(x0),
                        ..
                    }),
                ) => {
                    let t_check = grid.t_max().min(20.0);
                    let n = 200;
                    let mut worst = 0.0f64;
                    for k in 0..=n {
                        let t = t_check * k as f64 / n as f64;
                        let state = ks
                            .flow()
                            .integrate(x0, t)
                            .map_err(|e| anyhow::anyhow!("{e}"))?;
                        let want = 1.0 + (x0[0] - 1.0) * (-t).exp();
                        worst = worst.max((state[0] - want).abs());
                    }
                    Some(worst)
                }
                _ => None,
            };
            let pair = pairs.first().expect("validated nonempty");
            let orbit = backend
                .weak_orbit(pair, grid)
                .map_err(|e| anyhow::anyhow!("{e}"))?;
            let window = (grid.t_max() / 2.0, grid.t_max());
            let rec = recurrence_check(&orbit, 0.5, window);
            extras.koopman = Some(KoopmanExtras {
                radial_validation_error,
                recurrence: RecurrenceExtras {
                    threshold: rec.threshold,
                    window_start: window.0,
                    window_end: window.1,
                    peaks_total: rec.peaks.len(),
                    peaks_in_window: rec.peaks_in_window,
                    return_period: rec.return_period,
                    every_window_covered: rec.every_window_covered,
                },
            });
        }
    }
    Ok(extras)
}

/// Picks the output directory: CLI flag, then config, then default.
pub fn resolve_out_dir(config: &RunConfig, cli_out: Option<&Path>) -> PathBuf {
    if let Some(p) = cli_out {
        return p.to_path_buf();
    }
    if let Some(p) = &config.out_dir {
        return PathBuf::from(p);
    }
    PathBuf::from("semistab-out")
}
