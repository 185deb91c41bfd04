//! Quantum runtime model and classical simulation benchmark.
//!
//! A kernel-estimating circuit takes `t_circ(n) = N_l(n)·t_g + t_m`, and one
//! kernel entry needs `R(n)` runs, so `T_Q(n) = R(n)·t_circ(n)`. The
//! classical side `T_C(n)` is the measured wall-clock time of building the
//! Gram matrix with the statevector simulator.

use rust_decimal::Decimal;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::feature_map::{kernel_circuit_layer_count, FeatureMapSpec};
use crate::fit::{fit_exponential, ExpFit};
use crate::kernel::{
    check_qubit_list, concentration_sweep, dataset_seed, generate_dataset, gram_matrix,
    gram_matrix_parallel, ConcentrationPoint,
};
use crate::shots::{required_shots, ShotPlan, DEFAULT_GAMMA};

pub const DEFAULT_GATE_TIME: f64 = 1e-8;
pub const DEFAULT_MEASUREMENT_TIME: f64 = 1e-7;

/// Hardware constants of the runtime model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuntimeParams {
    /// Execution time of one gate layer, seconds.
    pub t_gate: f64,
    /// Duration of the final measurement, seconds.
    pub t_meas: f64,
    pub gamma: f64,
}

impl Default for RuntimeParams {
    fn default() -> Self {
        Self {
            t_gate: DEFAULT_GATE_TIME,
            t_meas: DEFAULT_MEASUREMENT_TIME,
            gamma: DEFAULT_GAMMA,
        }
    }
}

impl RuntimeParams {
    pub fn new(t_gate: f64, t_meas: f64, gamma: f64) -> Result<Self> {
        let params = Self {
            t_gate,
            t_meas,
            gamma,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("t_gate", self.t_gate),
            ("t_meas", self.t_meas),
            ("gamma", self.gamma),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Argument(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Which quantity a runtime refers to: one kernel entry or all
/// m(m−1)/2 independent entries of the Gram matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    PerEntry,
    #[default]
    FullGram,
}

impl Scope {
    /// Multiplier from one entry to this scope.
    pub fn entries(self, m: usize) -> f64 {
        match self {
            Scope::PerEntry => 1.0,
            Scope::FullGram => (m * m.saturating_sub(1) / 2) as f64,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Scope::PerEntry => "per-entry",
            Scope::FullGram => "full-gram",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per-entry" => Ok(Scope::PerEntry),
            "full-gram" => Ok(Scope::FullGram),
            other => Err(Error::Argument(format!(
                "unknown scope {other:?}; expected per-entry or full-gram"
            ))),
        }
    }
}

/// Shortest round-trip decimal form of `v`, if it fits a 96-bit decimal.
fn exact_decimal(v: f64) -> Option<Decimal> {
    Decimal::from_scientific(&format!("{v:e}")).ok()
}

fn check_times(params: &RuntimeParams) -> Result<()> {
    for (name, v) in [("t_gate", params.t_gate), ("t_meas", params.t_meas)] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::Argument(format!(
                "{name} must be non-negative and finite, got {v}"
            )));
        }
    }
    Ok(())
}

/// `N_l(n)·t_g + t_m` evaluated without rounding on the decimal values of the
/// constants. `None` when the constants have too many digits for a 96-bit
/// decimal.
pub fn circuit_time_exact(n: usize, params: &RuntimeParams) -> Result<Option<Decimal>> {
    check_times(params)?;
    let layers = kernel_circuit_layer_count(n)?;
    Ok(exact_decimal(params.t_gate)
        .zip(exact_decimal(params.t_meas))
        .and_then(|(tg, tm)| Decimal::from(layers).checked_mul(tg)?.checked_add(tm)))
}

/// Single circuit runtime `t_circ(n) = N_l(n)·t_g + t_m`, in seconds.
///
/// Computed exactly in decimal and rounded once, so the paper-style constants
/// give the literal values (`t_circ(1) = 1.4e-7` for the defaults).
pub fn circuit_time(n: usize, params: &RuntimeParams) -> Result<f64> {
    match circuit_time_exact(n, params)? {
        Some(exact) => Ok(exact
            .to_string()
            .parse::<f64>()
            .expect("decimal renders as a valid float")),
        None => {
            let layers = kernel_circuit_layer_count(n)? as f64;
            Ok(layers.mul_add(params.t_gate, params.t_meas))
        }
    }
}

/// `T_Q(n) = R(n)·t_circ(n)`, multiplied by the scope's entry count.
pub fn quantum_runtime(
    n: usize,
    m: usize,
    params: &RuntimeParams,
    plan: &ShotPlan,
    scope: Scope,
) -> Result<f64> {
    Ok(required_shots(n, plan)? * circuit_time(n, params)? * scope.entries(m))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineDescriptor {
    pub os: String,
    pub arch: String,
    pub cpu_model: String,
    pub logical_cpus: usize,
}

impl MachineDescriptor {
    pub fn detect() -> Self {
        let cpu_model = std::fs::read_to_string("/proc/cpuinfo")
            .ok()
            .and_then(|info| {
                info.lines()
                    .find(|l| l.starts_with("model name"))
                    .and_then(|l| l.split(':').nth(1))
                    .map(|s| s.trim().to_string())
            })
            .unwrap_or_else(|| "unknown".to_string());
        Self {
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            cpu_model,
            logical_cpus: std::thread::available_parallelism().map_or(1, |p| p.get()),
        }
    }
}

/// Smallest nonzero step observed between consecutive monotonic clock reads.
pub fn timer_resolution() -> Duration {
    let mut best = Duration::MAX;
    let mut prev = Instant::now();
    for _ in 0..10_000 {
        let now = Instant::now();
        let step = now - prev;
        if !step.is_zero() {
            best = best.min(step);
        }
        prev = now;
    }
    if best == Duration::MAX {
        Duration::from_nanos(1)
    } else {
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchOptions {
    /// Timed runs after the warmup; at least 3.
    pub repetitions: usize,
    /// Build the Gram matrix on the rayon pool. Exploratory only: the
    /// reported T_C is defined single-threaded.
    pub parallel: bool,
    /// Count dataset generation inside the timed region.
    pub include_dataset: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            repetitions: 3,
            parallel: false,
            include_dataset: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkResult {
    pub n: usize,
    pub m: usize,
    pub median_s: f64,
    pub samples_s: Vec<f64>,
    pub timer_resolution_s: f64,
    /// Set when the clock resolution exceeds 1% of the median.
    pub resolution_warning: bool,
    pub machine: MachineDescriptor,
}

fn median(samples: &[f64]) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        0.5 * (sorted[mid - 1] + sorted[mid])
    }
}

/// Median wall-clock time of a full Gram-matrix computation over a dataset of
/// `m` points drawn with `seed`, after one untimed warmup.
pub fn benchmark_classical(
    n: usize,
    m: usize,
    spec: &FeatureMapSpec,
    seed: u64,
    low: f64,
    high: f64,
    options: &BenchOptions,
) -> Result<BenchmarkResult> {
    if options.repetitions < 3 {
        return Err(Error::Argument(format!(
            "benchmark needs at least 3 repetitions, got {}",
            options.repetitions
        )));
    }
    let spec = spec.with_n(n);
    let prepared = generate_dataset(m, n, seed, low, high)?;
    let run = || -> Result<()> {
        let owned;
        let ds = if options.include_dataset {
            owned = generate_dataset(m, n, seed, low, high)?;
            &owned
        } else {
            &prepared
        };
        let g = if options.parallel {
            gram_matrix_parallel(ds, &spec)?
        } else {
            gram_matrix(ds, &spec)?
        };
        std::hint::black_box(g);
        Ok(())
    };

    run()?;
    let mut samples = Vec::with_capacity(options.repetitions);
    for _ in 0..options.repetitions {
        let start = Instant::now();
        run()?;
        samples.push(start.elapsed().as_secs_f64());
    }
    let median_s = median(&samples);
    let resolution = timer_resolution().as_secs_f64();
    Ok(BenchmarkResult {
        n,
        m,
        median_s,
        samples_s: samples,
        timer_resolution_s: resolution,
        resolution_warning: resolution > 0.01 * median_s,
        machine: MachineDescriptor::detect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuntimeRecord {
    pub n: usize,
    pub layers: usize,
    /// Continuous shot budget R(n).
    pub shots: f64,
    pub t_circ_s: f64,
    pub t_quantum_s: f64,
    pub t_classical_s: f64,
    pub scope: Scope,
    pub bench_warning: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuntimeCurve {
    pub m: usize,
    pub scope: Scope,
    pub records: Vec<RuntimeRecord>,
}

/// Models T_Q and attaches a measured median for one qubit count.
pub fn runtime_record(
    n: usize,
    m: usize,
    params: &RuntimeParams,
    plan: &ShotPlan,
    scope: Scope,
    bench: &BenchmarkResult,
) -> Result<RuntimeRecord> {
    let shots = required_shots(n, plan)?;
    let t_circ_s = circuit_time(n, params)?;
    Ok(RuntimeRecord {
        n,
        layers: kernel_circuit_layer_count(n)?,
        shots,
        t_circ_s,
        t_quantum_s: shots * t_circ_s * scope.entries(m),
        // the benchmark always times a full Gram matrix
        t_classical_s: bench.median_s / Scope::FullGram.entries(m) * scope.entries(m),
        scope,
        bench_warning: bench.resolution_warning,
    })
}

/// Decay fits of mean and spread from a concentration sweep.
pub fn fit_concentration(points: &[ConcentrationPoint]) -> Result<(ExpFit, ExpFit)> {
    let mu: Vec<_> = points.iter().map(|p| (p.n as f64, p.mean)).collect();
    let sigma: Vec<_> = points.iter().map(|p| (p.n as f64, p.std)).collect();
    Ok((fit_exponential(&mu)?, fit_exponential(&sigma)?))
}

/// Exponential fit of a runtime column over records with `n >= min_n`
/// (all records when fewer than two qualify). `-alpha` is the growth rate.
pub fn growth_fit(
    records: &[RuntimeRecord],
    min_n: usize,
    column: fn(&RuntimeRecord) -> f64,
) -> Option<ExpFit> {
    let tail: Vec<_> = records.iter().filter(|r| r.n >= min_n).collect();
    let chosen: Vec<_> = if tail.len() >= 2 {
        tail
    } else {
        records.iter().collect()
    };
    let pts: Vec<_> = chosen.iter().map(|r| (r.n as f64, column(r))).collect();
    fit_exponential(&pts).ok()
}

/// Inputs of a full quantum-vs-classical comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonSetup {
    pub qubits: Vec<usize>,
    pub m: usize,
    pub seed: u64,
    pub low: f64,
    pub high: f64,
    pub template: FeatureMapSpec,
    pub params: RuntimeParams,
    pub scope: Scope,
    pub bench: BenchOptions,
    /// Smallest n included in the runtime growth fits.
    pub growth_min_n: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub points: Vec<ConcentrationPoint>,
    pub mu_fit: ExpFit,
    pub sigma_fit: ExpFit,
    pub curve: RuntimeCurve,
    pub benchmarks: Vec<BenchmarkResult>,
    pub quantum_growth: Option<ExpFit>,
    pub classical_growth: Option<ExpFit>,
    pub warnings: Vec<String>,
}

/// Minimum r² below which a decay fit is flagged as untrustworthy.
pub const FIT_WARNING_R2: f64 = 0.5;

/// Concentration sweep, decay fits, shot budgets, T_Q and measured T_C over
/// the same qubit list.
pub fn runtime_comparison(setup: &ComparisonSetup) -> Result<Comparison> {
    check_qubit_list(&setup.qubits)?;
    setup.params.validate()?;
    let points = concentration_sweep(
        &setup.qubits,
        setup.m,
        setup.seed,
        setup.low,
        setup.high,
        &setup.template,
    )?;
    let (mu_fit, sigma_fit) = fit_concentration(&points)?;
    let mut warnings = fit_warnings(&mu_fit, &sigma_fit);
    let plan = ShotPlan::new(setup.params.gamma, mu_fit, sigma_fit)?;

    let mut records = Vec::with_capacity(setup.qubits.len());
    let mut benchmarks = Vec::with_capacity(setup.qubits.len());
    for &n in &setup.qubits {
        let bench = benchmark_classical(
            n,
            setup.m,
            &setup.template,
            dataset_seed(setup.seed, n),
            setup.low,
            setup.high,
            &setup.bench,
        )?;
        if bench.resolution_warning {
            warnings.push(format!(
                "n={n}: timer resolution exceeds 1% of the measured median"
            ));
        }
        records.push(runtime_record(
            n,
            setup.m,
            &setup.params,
            &plan,
            setup.scope,
            &bench,
        )?);
        benchmarks.push(bench);
    }
    let quantum_growth = growth_fit(&records, setup.growth_min_n, |r| r.t_quantum_s);
    let classical_growth = growth_fit(&records, setup.growth_min_n, |r| r.t_classical_s);
    Ok(Comparison {
        points,
        mu_fit,
        sigma_fit,
        curve: RuntimeCurve {
            m: setup.m,
            scope: setup.scope,
            records,
        },
        benchmarks,
        quantum_growth,
        classical_growth,
        warnings,
    })
}

pub fn fit_warnings(mu_fit: &ExpFit, sigma_fit: &ExpFit) -> Vec<String> {
    [("mean", mu_fit), ("std", sigma_fit)]
        .iter()
        .filter(|(_, f)| f.r_squared < FIT_WARNING_R2)
        .map(|(name, f)| {
            format!(
                "{name} decay fit r2={} is below {FIT_WARNING_R2}",
                f.r_squared
            )
        })
        .collect()
}
