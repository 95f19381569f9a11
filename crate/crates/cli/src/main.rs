//! `semistab` — finite-horizon stability evidence for operator semigroups.
//!
//! Exit codes: 0 success, 1 acceptance failures, 2 validation error,
//! 3 numerical failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use semistab::acceptance::{print_outcomes, run_suite, Suite};
use semistab::config::RunConfig;
use semistab::{presets, resolve_out_dir, run_analyze};

#[derive(Parser)]
#[command(
    name = "semistab",
    version,
    about = "Numerical laboratory for weak and almost weak stability of operator semigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an analysis from a config file or a named preset.
    Analyze {
        /// JSON config file.
        #[arg(long, conflicts_with = "preset")]
        config: Option<PathBuf>,
        /// Built-in preset name (see `semistab presets`).
        #[arg(long)]
        preset: Option<String>,
        /// Output directory (default: config's out_dir or ./semistab-out).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the grid horizon, keeping the step.
        #[arg(long)]
        horizon: Option<f64>,
        /// Override the config seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the acceptance suite and print one pass/fail line per criterion.
    Check {
        #[arg(long, value_enum, default_value_t = SuiteArg::Fast)]
        suite: SuiteArg,
    },
    /// List the built-in presets.
    Presets,
}

#[derive(Copy, Clone, ValueEnum)]
enum SuiteArg {
    Fast,
    Full,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            config,
            preset,
            out,
            horizon,
            seed,
        } => match load_config(config.as_deref(), preset.as_deref(), horizon, seed) {
            Ok(run_config) => {
                let out_dir = resolve_out_dir(&run_config, out.as_deref());
                match run_analyze(&run_config, &out_dir) {
                    Ok(report) => {
                        println!("verdict: {}", report.verdict);
                        println!("report: {}", out_dir.join("report.json").display());
                        ExitCode::SUCCESS
                    }
                    Err(err) => {
                        eprintln!("error: {err:#}");
                        ExitCode::from(classify_error(&err))
                    }
                }
            }
            Err(err) => {
                eprintln!("error: {err:#}");
                ExitCode::from(2)
            }
        },
        Command::Check { suite } => {
            let suite = match suite {
                SuiteArg::Fast => Suite::Fast,
                SuiteArg::Full => Suite::Full,
            };
            let outcomes = run_suite(suite);
            if print_outcomes(&outcomes) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Presets => {
            print!("{}", presets::table());
            ExitCode::SUCCESS
        }
    }
}

fn load_config(
    config_path: Option<&std::path::Path>,
    preset: Option<&str>,
    horizon: Option<f64>,
    seed: Option<u64>,
) -> anyhow::Result<RunConfig> {
    let mut config = match (config_path, preset) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
            RunConfig::from_json(&text)?
        }
        (None, Some(name)) => presets::build(name)
            .ok_or_else(|| anyhow::anyhow!("unknown preset '{name}' (see `semistab presets`)"))?,
        _ => anyhow::bail!("provide exactly one of --config or --preset"),
    };
    if let Some(h) = horizon {
        if !(h > 0.0) {
            anyhow::bail!("--horizon must be positive");
        }
        config.grid.n_steps = (h / config.grid.dt).round().max(1.0) as usize;
    }
    if let Some(s) = seed {
        config.seed = s;
    }
    config.validate()?;
    Ok(config)
}

/// Maps error text onto the numerical-vs-validation exit code split.
fn classify_error(err: &anyhow::Error) -> u8 {
    let text = format!("{err:#}");
    if text.contains("singular")
        || text.contains("no convergence")
        || text.contains("integrator failure")
    {
        3
    } else {
        2
    }
}
