//! Batch front door for the semistab laboratory: config-driven analysis
//! runs, scenario presets, report/plot emission, and the acceptance suite.

// `!(x > 0.0)`-style guards deliberately reject NaN together with the range
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod analyze;
pub mod config;
pub mod emit;
pub mod presets;
pub mod report;

pub use analyze::{resolve_out_dir, run_analyze};
pub use config::RunConfig;
