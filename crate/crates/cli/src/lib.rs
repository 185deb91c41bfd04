//! Experiment driver for the `qkonc` command-line tool: configuration,
//! orchestration of sweeps and comparisons, and CSV/JSON/SVG output.

pub mod config;
pub mod error;
pub mod report;
pub mod run;
pub mod svg;

pub use config::{ConfigLayer, ExperimentConfig};
pub use error::{CliError, Result};
pub use report::{ExperimentReport, FitsFile};
pub use run::{run_bench, run_comparison, run_concentration, run_shots};
