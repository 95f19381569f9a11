//! The report.json data model. Every number carries the horizon or
//! tolerance that produced it; reports contain no timestamps so identical
//! configs produce identical bytes.

use semistab_core::diagnostics::{StabilityReport, Verdict};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub config: RunConfig,
    pub verdict: String,
    pub criteria: Criteria,
    pub extras: Extras,
    pub skipped: Vec<String>,
    pub artifacts: Artifacts,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Criteria {
    pub cesaro_abs_tail: Measured,
    pub recurrence_floor: Measured,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub abel_ladder: Vec<AbelPoint>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub abel_limit_estimate: Option<Measured>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pointwise_abel_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub imaginary_eigen_count: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Measured {
    pub value: f64,
    pub threshold: f64,
    pub horizon: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AbelPoint {
    pub a: f64,
    pub value: f64,
}

/// Backend-specific diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct Extras {
    /// Density-one extraction on the first observation's |orbit|.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub density: Option<DensityExtras>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matrix: Option<MatrixExtras>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub measure: Option<MeasureExtras>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub koopman: Option<KoopmanExtras>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityExtras {
    /// Excised density of `{|orbit| ≥ ε}` over the block group assigned to
    /// each ladder ε.
    pub excised_densities: Vec<EpsilonDensity>,
    /// Fraction of the horizon kept in the density-one candidate set `M`.
    pub m_fraction: f64,
    pub verdict_positive: bool,
    pub density_tol: f64,
    pub blocks: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EpsilonDensity {
    pub epsilon: f64,
    pub density: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixExtras {
    pub s0_estimate: f64,
    pub bounded: bool,
    pub imaginary_defective: bool,
    pub dissipativity: f64,
    pub mean_ergodic: MeanErgodicExtras,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub jgdl: Option<SplitDims>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub foguel: Option<SplitDims>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cogenerator: Option<CogeneratorExtras>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeanErgodicExtras {
    pub horizon: f64,
    pub deviation: f64,
    pub kernel_dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplitDims {
    pub reversible_or_unitary: usize,
    pub stable: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CogeneratorExtras {
    pub norm: f64,
    pub unit_circle_eigenvalues: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureExtras {
    pub total_mass: f64,
    pub is_probability: bool,
    pub atom_mass_sum_squares: f64,
    pub rajchman: RajchmanExtras,
    pub wiener: WienerExtras,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RajchmanExtras {
    pub verdict: String,
    pub floor: f64,
    pub trend_slope: f64,
    pub tol: f64,
    pub window_sups: Vec<AbelPoint>,
    pub adversarial: Vec<AbelPoint>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WienerExtras {
    pub horizon: f64,
    pub value: f64,
    pub atom_floor: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KoopmanExtras {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub radial_validation_error: Option<f64>,
    pub recurrence: RecurrenceExtras,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecurrenceExtras {
    pub threshold: f64,
    pub window_start: f64,
    pub window_end: f64,
    pub peaks_total: usize,
    pub peaks_in_window: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub return_period: Option<f64>,
    pub every_window_covered: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct Artifacts {
    pub signals: Vec<String>,
    pub plots: Vec<String>,
}

pub fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::WeakStabilityEvidence => "weak-stability-evidence",
        Verdict::AlmostWeakOnlyEvidence => "almost-weak-only-evidence",
        Verdict::NotAlmostWeak => "not-almost-weak",
        Verdict::Inconclusive => "inconclusive",
    }
}

pub fn criteria_from(report: &StabilityReport) -> Criteria {
    let horizon = report.config.grid.t_max();
    Criteria {
        cesaro_abs_tail: Measured {
            value: report.cesaro_abs_tail,
            threshold: report.config.cesaro_tol,
            horizon,
        },
        recurrence_floor: Measured {
            value: report.recurrence_floor_observed,
            threshold: report.config.recurrence_floor,
            horizon,
        },
        abel_ladder: report
            .abel_ladder_values
            .iter()
            .map(|&(a, value)| AbelPoint { a, value })
            .collect(),
        abel_limit_estimate: report.abel_limit_estimate.map(|value| Measured {
            value,
            threshold: report.config.abel_floor,
            horizon,
        }),
        pointwise_abel_max: report.pointwise_abel_max,
        imaginary_eigen_count: report.imaginary_eigen_count,
    }
}
