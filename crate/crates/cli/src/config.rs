//! Run configuration: the JSON schema of an analysis run and its conversion
//! into core objects. A run is reproducible from its config alone.

use anyhow::{anyhow, bail, Context, Result};
use semistab_core::backends::{
    Backend, Flow, Functional, KoopmanSemigroup, MatrixGenerator, MatrixSemigroup,
    MultiplicationSemigroup, Observable, ObservationPair,
};
use semistab_core::diagnostics::ClassifyConfig;
use semistab_core::linalg::CMat;
use semistab_core::measures::DiscreteMeasure;
use semistab_core::vector::ComplexVector;
use semistab_core::{TimeGrid, C64};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Top-level run configuration (see `semistab presets` for examples).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    pub scenario: Scenario,
    /// Observation pairs; defaults depend on the scenario.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<VectorPair>,
    pub grid: GridConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Abel ladder `a` values, descending.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub abel_ladder: Vec<f64>,
    /// Extra orbit probe times for the recurrence scan.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub adversarial_probes: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_schema_version() -> u32 {
    SCHEMA_VERSION
}

fn default_seed() -> u64 {
    42
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scenario {
    /// Dense generator; entries are `[re, im]` pairs in row-major order and
    /// the length must be a perfect square.
    Matrix {
        matrix: Vec<[f64; 2]>,
        #[serde(default)]
        group_mode: bool,
    },
    Multiplication { measure: MeasureConfig },
    Koopman {
        flow: FlowConfig,
        observable: ObservableConfig,
        functional: FunctionalConfig,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MeasureConfig {
    Atoms { atoms: Vec<[f64; 2]> },
    Lebesgue { a: f64, b: f64, n: usize },
    Cantor { depth: u32 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "kebab-case")]
pub enum FlowConfig {
    Homoclinic {
        #[serde(default = "default_flow_step")]
        h: f64,
    },
    TorusRotation {
        alpha: f64,
        #[serde(default = "default_flow_step")]
        h: f64,
    },
}

fn default_flow_step() -> f64 {
    1e-3
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ObservableConfig {
    Radial,
    Angle,
    FourierMode { k: i32 },
    CircleBump {
        center: f64,
        width: f64,
        radial_width: f64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FunctionalConfig {
    Point { state: Vec<f64> },
    Empirical { points: Vec<WeightedPoint> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedPoint {
    pub state: Vec<f64>,
    pub weight: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VectorPair {
    pub x: Vec<[f64; 2]>,
    pub y: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridConfig {
    #[serde(default)]
    pub t_start: f64,
    pub dt: f64,
    pub n_steps: usize,
}

/// Tolerance overrides; every number is echoed into the report.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub cesaro_tol: f64,
    pub recurrence_floor: f64,
    pub weak_tol: f64,
    pub trailing_fraction: f64,
    pub abel_floor: f64,
    pub tol_im: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            cesaro_tol: 0.05,
            recurrence_floor: 0.2,
            weak_tol: 0.05,
            trailing_fraction: 0.1,
            abel_floor: 0.1,
            tol_im: 1e-9,
        }
    }
}

fn to_c64(pair: &[f64; 2]) -> C64 {
    C64::new(pair[0], pair[1])
}

fn to_vector(pairs: &[[f64; 2]]) -> Result<ComplexVector> {
    ComplexVector::new(pairs.iter().map(to_c64).collect()).map_err(|e| anyhow!("{e}"))
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: RunConfig = serde_json::from_str(text).context("config does not parse")?;
        if config.schema_version != SCHEMA_VERSION {
            bail!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                config.schema_version
            );
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.grid.dt > 0.0) || !self.grid.dt.is_finite() {
            bail!("grid.dt must be finite and positive");
        }
        if self.grid.n_steps == 0 {
            bail!("grid.n_steps must be positive");
        }
        if self.grid.t_start < 0.0 {
            bail!("grid.t_start must be nonnegative");
        }
        match &self.scenario {
            Scenario::Matrix { matrix, .. } => {
                let len = matrix.len();
                let dim = (len as f64).sqrt().round() as usize;
                if dim == 0 || dim * dim != len {
                    bail!("matrix must be square: {len} entries is not a perfect square");
                }
            }
            Scenario::Multiplication { measure } => match measure {
                MeasureConfig::Atoms { atoms } => {
                    if atoms.is_empty() {
                        bail!("measure needs at least one atom");
                    }
                    if atoms.iter().any(|a| a[1] <= 0.0) {
                        bail!("atom weights must be positive");
                    }
                }
                MeasureConfig::Lebesgue { a, b, n } => {
                    if !(b > a) || *n == 0 {
                        bail!("lebesgue measure needs b > a and n > 0");
                    }
                }
                MeasureConfig::Cantor { depth } => {
                    if *depth == 0 || *depth > 24 {
                        bail!("cantor depth must be in 1..=24");
                    }
                }
            },
            Scenario::Koopman { functional, .. } => match functional {
                FunctionalConfig::Point { state } => {
                    if state.is_empty() {
                        bail!("point functional needs a state");
                    }
                }
                FunctionalConfig::Empirical { points } => {
                    if points.is_empty() {
                        bail!("empirical functional needs points");
                    }
                }
            },
        }
        if !self.abel_ladder.is_empty() && !self.abel_ladder.windows(2).all(|w| w[1] < w[0]) {
            bail!("abel_ladder must be strictly decreasing");
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<TimeGrid> {
        TimeGrid::new(self.grid.t_start, self.grid.dt, self.grid.n_steps).map_err(|e| anyhow!("{e}"))
    }

    /// Builds the backend.
    pub fn backend(&self) -> Result<Backend> {
        match &self.scenario {
            Scenario::Matrix { matrix, group_mode } => {
                let dim = (matrix.len() as f64).sqrt().round() as usize;
                let m = CMat::from_fn(dim, dim, |i, j| to_c64(&matrix[i * dim + j]));
                let gen = MatrixGenerator::new(m).map_err(|e| anyhow!("{e}"))?;
                let sg = MatrixSemigroup::with_tolerance(gen, self.tolerances.tol_im, *group_mode)
                    .map_err(|e| anyhow!("{e}"))?;
                Ok(Backend::Matrix(sg))
            }
            Scenario::Multiplication { measure } => {
                let mu = match measure {
                    MeasureConfig::Atoms { atoms } => {
                        let pairs: Vec<(f64, f64)> =
                            atoms.iter().map(|a| (a[0], a[1])).collect();
                        DiscreteMeasure::from_atoms(&pairs)
                    }
                    MeasureConfig::Lebesgue { a, b, n } => DiscreteMeasure::lebesgue(*a, *b, *n),
                    MeasureConfig::Cantor { depth } => DiscreteMeasure::cantor(*depth),
                }
                .map_err(|e| anyhow!("{e}"))?;
                Ok(Backend::Multiplication(
                    MultiplicationSemigroup::new(mu).map_err(|e| anyhow!("{e}"))?,
                ))
            }
            Scenario::Koopman { flow, .. } => {
                let f = match flow {
                    FlowConfig::Homoclinic { h } => Flow::homoclinic(*h),
                    FlowConfig::TorusRotation { alpha, h } => Flow::torus_rotation(*alpha, *h),
                }
                .map_err(|e| anyhow!("{e}"))?;
                Ok(Backend::Koopman(KoopmanSemigroup::new(f)))
            }
        }
    }

    /// Observation pairs: explicit ones, otherwise scenario defaults
    /// (diagonal basis pairs for matrices, `(𝟙, 𝟙)` for measures, the
    /// configured observable for flows).
    pub fn observation_pairs(&self, backend: &Backend) -> Result<Vec<ObservationPair>> {
        match &self.scenario {
            Scenario::Koopman {
                observable,
                functional,
                ..
            } => {
                let obs = match observable {
                    ObservableConfig::Radial => Observable::Radial,
                    ObservableConfig::Angle => Observable::Angle,
                    ObservableConfig::FourierMode { k } => Observable::FourierMode { k: *k },
                    ObservableConfig::CircleBump {
                        center,
                        width,
                        radial_width,
                    } => Observable::CircleBump {
                        center: *center,
                        width: *width,
                        radial_width: *radial_width,
                    },
                };
                let fun = match functional {
                    FunctionalConfig::Point { state } => Functional::Point(state.clone()),
                    FunctionalConfig::Empirical { points } => Functional::Empirical(
                        points.iter().map(|p| (p.state.clone(), p.weight)).collect(),
                    ),
                };
                Ok(vec![ObservationPair::Koopman {
                    observable: obs,
                    functional: fun,
                }])
            }
            _ => {
                if !self.observations.is_empty() {
                    return self
                        .observations
                        .iter()
                        .map(|p| {
                            Ok(ObservationPair::Vectors {
                                x: to_vector(&p.x)?,
                                y: to_vector(&p.y)?,
                            })
                        })
                        .collect();
                }
                let dim = match backend {
                    Backend::Matrix(ms) => semistab_core::semigroup::SemigroupEvaluator::dim(ms),
                    Backend::Multiplication(ms) => {
                        semistab_core::semigroup::SemigroupEvaluator::dim(ms)
                    }
                    Backend::Koopman(_) => unreachable!("handled above"),
                };
                match backend {
                    Backend::Multiplication(_) => {
                        let ones = ComplexVector::ones(dim);
                        Ok(vec![ObservationPair::Vectors {
                            x: ones.clone(),
                            y: ones,
                        }])
                    }
                    _ => Ok((0..dim.min(8))
                        .map(|k| ObservationPair::Vectors {
                            x: ComplexVector::basis(dim, k),
                            y: ComplexVector::basis(dim, k),
                        })
                        .collect()),
                }
            }
        }
    }

    pub fn classify_config(&self) -> Result<ClassifyConfig> {
        let mut config = ClassifyConfig::with_grid(self.grid()?);
        config.cesaro_tol = self.tolerances.cesaro_tol;
        config.recurrence_floor = self.tolerances.recurrence_floor;
        config.weak_tol = self.tolerances.weak_tol;
        config.trailing_fraction = self.tolerances.trailing_fraction;
        config.abel_floor = self.tolerances.abel_floor;
        config.tol_im = self.tolerances.tol_im;
        if !self.abel_ladder.is_empty() {
            config.abel_ladder = self.abel_ladder.clone();
        }
        config.adversarial_probes = self.adversarial_probes.clone();
        Ok(config)
    }
}
