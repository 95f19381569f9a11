//! CSV and plot-script emission. Plots are gnuplot scripts next to the CSV
//! data, so no rendering dependency enters the tool.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use semistab_core::grid::{running_mean, Signal, Transform};

/// Rows beyond this are strided out (running means are computed on the full
/// grid first, so the emitted values are unaffected by the striding).
const MAX_CSV_ROWS: usize = 20_000;

/// Writes a signal as CSV with columns `t, re, im, abs, running_mean`.
pub fn write_signal_csv(path: &Path, signal: &Signal) -> Result<()> {
    let mean = running_mean(signal, Transform::Abs);
    let mut file = fs::File::create(path)
        .with_context(|| format!("cannot create {}", path.display()))?;
    writeln!(file, "t,re,im,abs,running_mean")?;
    let grid = signal.grid();
    let stride = grid.len().div_ceil(MAX_CSV_ROWS).max(1);
    for (k, t) in grid.points().enumerate() {
        if k % stride != 0 && k != grid.len() - 1 {
            continue;
        }
        let v = signal.values()[k];
        writeln!(
            file,
            "{t:.9e},{:.9e},{:.9e},{:.9e},{:.9e}",
            v.re,
            v.im,
            v.norm(),
            mean.values()[k].re
        )?;
    }
    Ok(())
}

/// Writes a gnuplot script plotting `abs` and `running_mean` against `t`
/// from a CSV emitted by [`write_signal_csv`].
pub fn write_plot_script(path: &Path, csv_relative: &str, title: &str) -> Result<()> {
    let mut file = fs::File::create(path)
        .with_context(|| format!("cannot create {}", path.display()))?;
    writeln!(file, "set datafile separator ','")?;
    writeln!(file, "set key autotitle columnhead")?;
    writeln!(file, "set xlabel 't'")?;
    writeln!(file, "set title '{title}'")?;
    writeln!(file, "set grid")?;
    writeln!(
        file,
        "plot '{csv_relative}' using 1:4 with lines title '|orbit|', \\"
    )?;
    writeln!(
        file,
        "     '{csv_relative}' using 1:5 with lines title 'running mean'"
    )?;
    Ok(())
}

/// Writes a Fourier profile as CSV with columns `t, re, im, abs`.
pub fn write_fourier_csv(
    path: &Path,
    profile: &semistab_core::measures::FourierProfile,
) -> Result<()> {
    let mut file = fs::File::create(path)
        .with_context(|| format!("cannot create {}", path.display()))?;
    writeln!(file, "t,re,im,abs")?;
    let grid = profile.samples.grid();
    let stride = grid.len().div_ceil(MAX_CSV_ROWS).max(1);
    for (k, t) in grid.points().enumerate() {
        if k % stride != 0 && k != grid.len() - 1 {
            continue;
        }
        let v = profile.samples.values()[k];
        writeln!(file, "{t:.9e},{:.9e},{:.9e},{:.9e}", v.re, v.im, v.norm())?;
    }
    Ok(())
}

/// Writes a generic two-column CSV (`a, value` style curves).
pub fn write_curve_csv(path: &Path, header: &str, rows: &[(f64, f64)]) -> Result<()> {
    let mut file = fs::File::create(path)
        .with_context(|| format!("cannot create {}", path.display()))?;
    writeln!(file, "{header}")?;
    for &(a, v) in rows {
        writeln!(file, "{a:.9e},{v:.9e}")?;
    }
    Ok(())
}
