//! Built-in scenario presets.

use std::f64::consts::PI;

use crate::config::{
    FlowConfig, FunctionalConfig, GridConfig, MeasureConfig, ObservableConfig, RunConfig,
    Scenario, Tolerances, SCHEMA_VERSION,
};

pub struct PresetInfo {
    pub name: &'static str,
    pub demonstrates: &'static str,
    pub parameters: &'static str,
}

pub const PRESETS: &[PresetInfo] = &[
    PresetInfo {
        name: "cantor",
        demonstrates:
            "Cantor spectral measure: Cesàro-mean decay of the weak orbit with a persistent \
             recurrence floor at t = 2π·3^n — almost weakly but not weakly stable",
        parameters: "depth 20, T = 10^4, dt = 0.01, probes 2π·3^1..3^6",
    },
    PresetInfo {
        name: "lebesgue",
        demonstrates:
            "Absolutely continuous spectral measure on [0,1]: Fourier transform decays, weak \
             stability evidence of the induced unitary group",
        parameters: "10^4 midpoint atoms, T = 10^3, dt = 0.01",
    },
    PresetInfo {
        name: "two-atoms",
        demonstrates:
            "Atomic measure (δ₁ + δ₋₁)/2: the orbit is cos t, no decay in any averaged sense \
             (purely imaginary point spectrum)",
        parameters: "2 atoms, T = 200, dt = 0.01",
    },
    PresetInfo {
        name: "stable-matrix",
        demonstrates: "Uniformly stable generator A = −I: weak stability evidence",
        parameters: "2×2, T = 100, dt = 0.01",
    },
    PresetInfo {
        name: "imaginary-pair",
        demonstrates:
            "A = diag(i, −1): the imaginary eigenvalue defeats almost weak stability; the \
             eigenvalue scan and the Abel ladder agree",
        parameters: "2×2, T = 100, dt = 0.01",
    },
    PresetInfo {
        name: "homoclinic",
        demonstrates:
            "Koopman orbit of the planar flow ṙ = 1 − r, ω̇ = 1 + r² − 2r cos ω against δ_x0: \
             bump observable on the circle, Cesàro decay with recurrence scan",
        parameters: "x0 = (0.5, 0), bump at ω = π, h = 1e-3, T = 2000, dt = 0.05",
    },
    PresetInfo {
        name: "torus-rotation",
        demonstrates:
            "Koopman orbit of the circle rotation: isometric group, constant-modulus orbit, \
             exact mixing correlation is a triangular wave (not weakly mixing)",
        parameters: "alpha = 1, Fourier mode k = 1, x0 = 0, T = 100, dt = 0.01",
    },
    PresetInfo {
        name: "foguel-demo",
        demonstrates:
            "Contractive generator with a planted unitary block: splitting into the weakly \
             stable part and the maximal unitary part",
        parameters: "4×4, one rotation frequency, spectral gap 0.6, T = 100, dt = 0.01",
    },
    PresetInfo {
        name: "cogenerator-demo",
        demonstrates:
            "Cayley-transform cogenerator of a contractive generator: contraction norm, unit \
             circle ↔ imaginary axis spectral mapping, matched norm plateaus",
        parameters: "3×3 mixing a rotation with a stable block, T = 200, dt = 0.01",
    },
];

fn base(scenario: Scenario, dt: f64, n_steps: usize) -> RunConfig {
    RunConfig {
        schema_version: SCHEMA_VERSION,
        scenario,
        observations: Vec::new(),
        grid: GridConfig {
            t_start: 0.0,
            dt,
            n_steps,
        },
        tolerances: Tolerances::default(),
        abel_ladder: Vec::new(),
        adversarial_probes: Vec::new(),
        out_dir: None,
        seed: 42,
    }
}

fn matrix_scenario(rows: &[&[(f64, f64)]]) -> Scenario {
    let mut flat = Vec::new();
    for row in rows {
        for &(re, im) in *row {
            flat.push([re, im]);
        }
    }
    Scenario::Matrix {
        matrix: flat,
        group_mode: false,
    }
}

/// Builds the named preset; `None` for unknown names.
pub fn build(name: &str) -> Option<RunConfig> {
    match name {
        "cantor" => {
            let mut config = base(
                Scenario::Multiplication {
                    measure: MeasureConfig::Cantor { depth: 20 },
                },
                0.01,
                1_000_000,
            );
            config.adversarial_probes = (1..=6).map(|n| 2.0 * PI * 3.0f64.powi(n)).collect();
            config.abel_ladder = vec![0.05, 0.0125, 0.003125, 0.00078125];
            Some(config)
        }
        "lebesgue" => Some(base(
            Scenario::Multiplication {
                measure: MeasureConfig::Lebesgue {
                    a: 0.0,
                    b: 1.0,
                    n: 10_000,
                },
            },
            0.01,
            100_000,
        )),
        "two-atoms" => Some(base(
            Scenario::Multiplication {
                measure: MeasureConfig::Atoms {
                    atoms: vec![[1.0, 0.5], [-1.0, 0.5]],
                },
            },
            0.01,
            20_000,
        )),
        "stable-matrix" => Some(base(
            matrix_scenario(&[&[(-1.0, 0.0), (0.0, 0.0)], &[(0.0, 0.0), (-1.0, 0.0)]]),
            0.01,
            10_000,
        )),
        "imaginary-pair" => Some(base(
            matrix_scenario(&[&[(0.0, 1.0), (0.0, 0.0)], &[(0.0, 0.0), (-1.0, 0.0)]]),
            0.01,
            10_000,
        )),
        "homoclinic" => Some(base(
            Scenario::Koopman {
                flow: FlowConfig::Homoclinic { h: 1e-3 },
                observable: ObservableConfig::CircleBump {
                    center: PI,
                    width: 0.5,
                    radial_width: 0.5,
                },
                functional: FunctionalConfig::Point {
                    state: vec![0.5, 0.0],
                },
            },
            0.05,
            40_000,
        )),
        "torus-rotation" => Some(base(
            Scenario::Koopman {
                flow: FlowConfig::TorusRotation { alpha: 1.0, h: 1e-3 },
                observable: ObservableConfig::FourierMode { k: 1 },
                functional: FunctionalConfig::Point { state: vec![0.0] },
            },
            0.01,
            10_000,
        )),
        "foguel-demo" => Some(base(
            // U (diag(1.3i) ⊕ stable) U* for a fixed small unitary mix
            matrix_scenario(&[
                &[(-0.45, 0.65), (0.45, 0.0), (-0.45, -0.65), (0.0, 0.0)],
                &[(0.45, 0.0), (-0.9, 0.0), (0.45, 0.0), (0.0, 0.0)],
                &[(-0.45, -0.65), (0.45, 0.0), (-0.45, 0.65), (0.0, 0.0)],
                &[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-1.1, -0.8)],
            ]),
            0.01,
            10_000,
        )),
        "cogenerator-demo" => Some(base(
            matrix_scenario(&[
                &[(0.0, 1.5), (0.0, 0.0), (0.0, 0.0)],
                &[(0.0, 0.0), (-0.8, 0.4), (0.2, 0.1)],
                &[(0.0, 0.0), (0.0, 0.0), (-1.2, -0.6)],
            ]),
            0.01,
            20_000,
        )),
        _ => None,
    }
}

/// Plain-text preset table.
pub fn table() -> String {
    let mut out = String::new();
    out.push_str(&format!("{:<18} {:<90} {}\n", "name", "demonstrates", "defaults"));
    out.push_str(&format!("{:-<18} {:-<90} {:-<40}\n", "", "", ""));
    for p in PRESETS {
        out.push_str(&format!(
            "{:<18} {:<90} {}\n",
            p.name, p.demonstrates, p.parameters
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_preset_builds_and_validates() {
        for p in PRESETS {
            let config = build(p.name).unwrap_or_else(|| panic!("preset {} missing", p.name));
            config.validate().unwrap();
        }
        assert!(build("nonsense").is_none());
    }

    #[test]
    fn table_mentions_the_key_presets() {
        let t = table();
        for name in ["cantor", "homoclinic", "torus-rotation", "foguel-demo", "cogenerator-demo"] {
            assert!(t.contains(name), "table missing {name}");
        }
    }
}
