//! Experiment configuration: defaults, JSON config files, flag overrides and
//! the `QKONC_SEED` fallback.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use qkonc_core::runtime::{BenchOptions, RuntimeParams};
use qkonc_core::sim::MAX_QUBITS;
use qkonc_core::{FeatureMapSpec, Scope};

use crate::error::{CliError, Result};

pub const SEED_ENV: &str = "QKONC_SEED";
pub const DEFAULT_SEED: u64 = 42;
/// Upper bound on the memory held by the m embedded states of one Gram build.
pub const STATE_MEMORY_BUDGET: u64 = 8 << 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub qubits: Vec<usize>,
    pub m: usize,
    pub seed: u64,
    pub reps: usize,
    pub low: f64,
    pub high: f64,
    pub t_gate: f64,
    pub t_meas: f64,
    pub gamma: f64,
    pub scope: Scope,
    pub out: PathBuf,
    pub bench_repetitions: usize,
    /// Parallel Gram assembly in benchmarks (exploratory; not a reportable T_C).
    pub parallel: bool,
    pub include_dataset: bool,
    /// Smallest n used when fitting runtime growth rates.
    pub growth_min_n: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            qubits: vec![2, 4, 6, 8, 10, 12],
            m: 100,
            seed: DEFAULT_SEED,
            reps: 1,
            low: 0.0,
            high: 2.0 * std::f64::consts::PI,
            t_gate: qkonc_core::runtime::DEFAULT_GATE_TIME,
            t_meas: qkonc_core::runtime::DEFAULT_MEASUREMENT_TIME,
            gamma: qkonc_core::shots::DEFAULT_GAMMA,
            scope: Scope::FullGram,
            out: PathBuf::from("results"),
            bench_repetitions: 3,
            parallel: false,
            include_dataset: false,
            growth_min_n: 10,
        }
    }
}

/// Partial configuration, as read from a config file or gathered from flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    pub qubits: Option<Vec<usize>>,
    pub m: Option<usize>,
    pub seed: Option<u64>,
    pub reps: Option<usize>,
    pub low: Option<f64>,
    pub high: Option<f64>,
    pub t_gate: Option<f64>,
    pub t_meas: Option<f64>,
    pub gamma: Option<f64>,
    pub scope: Option<Scope>,
    pub out: Option<PathBuf>,
    pub bench_repetitions: Option<usize>,
    pub parallel: Option<bool>,
    pub include_dataset: Option<bool>,
    pub growth_min_n: Option<usize>,
}

impl ConfigLayer {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    fn apply(self, cfg: &mut ExperimentConfig) {
        macro_rules! take {
            ($($field:ident),*) => { $( if let Some(v) = self.$field { cfg.$field = v; } )* };
        }
        take!(
            qubits,
            m,
            seed,
            reps,
            low,
            high,
            t_gate,
            t_meas,
            gamma,
            scope,
            out,
            bench_repetitions,
            parallel,
            include_dataset,
            growth_min_n
        );
    }
}

/// Parses the `QKONC_SEED` value, if set.
pub fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => {
            v.trim().parse().map(Some).map_err(|_| {
                CliError::Config(format!("{SEED_ENV}={v:?} is not an unsigned integer"))
            })
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Config(format!("{SEED_ENV}: {e}"))),
    }
}

impl ExperimentConfig {
    /// Defaults, then `QKONC_SEED`, then the config file, then flags.
    pub fn resolve(
        file: Option<ConfigLayer>,
        flags: ConfigLayer,
        env_seed: Option<u64>,
    ) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        if let Some(seed) = env_seed {
            cfg.seed = seed;
        }
        if let Some(file) = file {
            file.apply(&mut cfg);
        }
        flags.apply(&mut cfg);
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks every precondition of the pipeline before work starts.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.qubits.is_empty() {
            return bad("qubit list is empty".into());
        }
        if self.qubits.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!(
                "qubit list must be strictly ascending: {:?}",
                self.qubits
            ));
        }
        let max_n = *self.qubits.last().expect("nonempty");
        if self.qubits[0] == 0 || max_n > MAX_QUBITS {
            return bad(format!("qubit counts must lie in 1..={MAX_QUBITS}"));
        }
        if self.m < 2 {
            return bad(format!("m must be at least 2, got {}", self.m));
        }
        let bytes = (self.m as u64).saturating_mul(16u64 << max_n);
        if bytes > STATE_MEMORY_BUDGET {
            return bad(format!(
                "{} states of {max_n} qubits need {bytes} bytes, over the {STATE_MEMORY_BUDGET}-byte budget",
                self.m
            ));
        }
        FeatureMapSpec::new(1, self.reps)?;
        if !(self.low.is_finite() && self.high.is_finite() && self.low < self.high) {
            return bad(format!(
                "invalid sampling interval [{}, {})",
                self.low, self.high
            ));
        }
        self.runtime_params()?;
        if self.bench_repetitions < 3 {
            return bad(format!(
                "bench_repetitions must be at least 3, got {}",
                self.bench_repetitions
            ));
        }
        Ok(())
    }

    pub fn template(&self) -> FeatureMapSpec {
        FeatureMapSpec {
            n: 1,
            reps: self.reps,
        }
    }

    pub fn runtime_params(&self) -> Result<RuntimeParams> {
        Ok(RuntimeParams::new(self.t_gate, self.t_meas, self.gamma)?)
    }

    pub fn bench_options(&self) -> BenchOptions {
        BenchOptions {
            repetitions: self.bench_repetitions,
            parallel: self.parallel,
            include_dataset: self.include_dataset,
        }
    }
}
