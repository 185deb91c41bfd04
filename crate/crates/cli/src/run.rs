//! Subcommand drivers: each validates its output directory, runs the
//! pipeline and writes CSV, JSON and SVG artifacts.

use std::path::{Path, PathBuf};
use std::time::Instant;

use qkonc_core::runtime::{
    benchmark_classical, fit_concentration, fit_warnings, growth_fit, runtime_record,
};
use qkonc_core::{concentration_sweep, dataset_seed, required_shots, RuntimeCurve, ShotPlan};

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::report::{self, ExperimentReport, FitsFile, GrowthFit, STATUS_FAILED};

pub const CONCENTRATION_CSV: &str = "concentration.csv";
pub const CONCENTRATION_SVG: &str = "concentration.svg";
pub const FITS_JSON: &str = "fits.json";
pub const COMPARISON_CSV: &str = "comparison.csv";
pub const COMPARISON_SVG: &str = "comparison.svg";
pub const SHOTS_CSV: &str = "shots.csv";
pub const BENCH_CSV: &str = "bench.csv";
pub const REPORT_JSON: &str = "report.json";

/// Creates `dir` and proves it is writable.
pub fn prepare_out_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let probe = dir.join(".qkonc-write-probe");
    std::fs::write(&probe, b"").map_err(|e| CliError::io(&probe, e))?;
    std::fs::remove_file(&probe).map_err(|e| CliError::io(&probe, e))
}

fn out_path(config: &ExperimentConfig, name: &str) -> PathBuf {
    config.out.join(name)
}

fn concentration_stage(config: &ExperimentConfig, report: &mut ExperimentReport) -> Result<()> {
    report.concentration = concentration_sweep(
        &config.qubits,
        config.m,
        config.seed,
        config.low,
        config.high,
        &config.template(),
    )?;
    report::emit_csv_concentration(report, &out_path(config, CONCENTRATION_CSV))?;
    let fits = if report.concentration.len() < 2 {
        FitsFile::insufficient()
    } else {
        let (mu, sigma) = fit_concentration(&report.concentration)?;
        report.warnings.extend(fit_warnings(&mu, &sigma));
        FitsFile::fitted(mu, sigma)
    };
    report::write_json(&out_path(config, FITS_JSON), &fits)?;
    report.fits = Some(fits);
    report::write_file(
        &out_path(config, CONCENTRATION_SVG),
        &report::concentration_chart(&report.concentration, report.fits.as_ref()).render(),
    )
}

fn finish(
    mut report: ExperimentReport,
    config: &ExperimentConfig,
    start: Instant,
    outcome: Result<()>,
) -> Result<ExperimentReport> {
    report.wall_time_s = start.elapsed().as_secs_f64();
    match outcome {
        Ok(()) => {
            report::write_json(&out_path(config, REPORT_JSON), &report)?;
            Ok(report)
        }
        Err(e) => {
            report.status = STATUS_FAILED.into();
            report.error = Some(e.to_string());
            // best effort: the original error is the one worth reporting
            let _ = report::write_json(&out_path(config, REPORT_JSON), &report);
            Err(e)
        }
    }
}

/// Concentration sweep with decay fits: `concentration.csv`, `fits.json`,
/// `concentration.svg` and `report.json`.
pub fn run_concentration(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    prepare_out_dir(&config.out)?;
    let start = Instant::now();
    let mut report = ExperimentReport::new("concentration", config);
    let outcome = concentration_stage(config, &mut report);
    finish(report, config, start, outcome)
}

fn comparison_stage(config: &ExperimentConfig, report: &mut ExperimentReport) -> Result<()> {
    concentration_stage(config, report)?;
    let (mu, sigma) = match report.fits.as_ref() {
        Some(FitsFile {
            mu: Some(mu),
            sigma: Some(sigma),
            ..
        }) => (*mu, *sigma),
        _ => {
            return Err(CliError::Config(
                "runtime comparison needs at least 2 qubit counts for the decay fits".into(),
            ))
        }
    };
    let params = config.runtime_params()?;
    let plan = ShotPlan::new(config.gamma, mu, sigma)?;
    let bench = config.bench_options();
    if bench.parallel {
        report
            .warnings
            .push("parallel Gram assembly enabled; T_C is exploratory, not single-core".into());
    }
    let template = config.template();
    report.runtime = Some(RuntimeCurve {
        m: config.m,
        scope: config.scope,
        records: Vec::new(),
    });
    let csv_path = out_path(config, COMPARISON_CSV);
    for &n in &config.qubits {
        let result = benchmark_classical(
            n,
            config.m,
            &template,
            dataset_seed(config.seed, n),
            config.low,
            config.high,
            &bench,
        )?;
        if result.resolution_warning {
            report.warnings.push(format!(
                "n={n}: timer resolution exceeds 1% of the measured median"
            ));
        }
        let record = runtime_record(n, config.m, &params, &plan, config.scope, &result)?;
        report.benchmarks.push(result);
        let curve = report.runtime.as_mut().expect("initialized above");
        curve.records.push(record);
        // flush after every qubit count so a failure leaves partial rows
        report::write_file(&csv_path, &report::comparison_csv(Some(curve)))?;
    }
    let curve = report.runtime.as_ref().expect("initialized above");
    report.quantum_growth =
        growth_fit(&curve.records, config.growth_min_n, |r| r.t_quantum_s).map(GrowthFit::from);
    report.classical_growth =
        growth_fit(&curve.records, config.growth_min_n, |r| r.t_classical_s).map(GrowthFit::from);
    report::write_file(
        &out_path(config, COMPARISON_SVG),
        &report::comparison_chart(Some(curve)).render(),
    )
}

/// Full pipeline: sweep, fits, shot budgets, T_Q and measured T_C. Writes the
/// concentration artifacts plus `comparison.csv` and `comparison.svg`.
pub fn run_comparison(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    prepare_out_dir(&config.out)?;
    let start = Instant::now();
    let mut report = ExperimentReport::new("compare", config);
    let outcome = comparison_stage(config, &mut report);
    finish(report, config, start, outcome)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShotRow {
    pub n: usize,
    pub k_model: f64,
    pub sigma_model: f64,
    pub shots: f64,
}

/// Evaluates R(n) over the configured qubit list from stored fits.
pub fn run_shots(config: &ExperimentConfig, fits_path: &Path) -> Result<Vec<ShotRow>> {
    config.validate()?;
    prepare_out_dir(&config.out)?;
    let fits = FitsFile::read(fits_path)?;
    let (mu, sigma) = fits.mu.zip(fits.sigma).ok_or_else(|| {
        CliError::Config(format!(
            "{} has no fitted parameters ({})",
            fits_path.display(),
            fits.status
        ))
    })?;
    let plan = ShotPlan::new(config.gamma, mu, sigma)?;
    let mut rows = Vec::with_capacity(config.qubits.len());
    for &n in &config.qubits {
        rows.push(ShotRow {
            n,
            k_model: plan.modeled_mean(n),
            sigma_model: plan.modeled_std(n),
            shots: required_shots(n, &plan)?,
        });
    }
    let mut csv = format!("{}\n", report::SHOTS_HEADER);
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            report::fmt_f64(r.k_model),
            report::fmt_f64(r.sigma_model),
            report::fmt_f64(r.shots)
        ));
    }
    report::write_file(&out_path(config, SHOTS_CSV), &csv)?;
    Ok(rows)
}

/// Classical simulation time only: `bench.csv` and `report.json`.
pub fn run_bench(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    prepare_out_dir(&config.out)?;
    let start = Instant::now();
    let mut report = ExperimentReport::new("bench", config);
    let outcome = (|| {
        let template = config.template();
        let options = config.bench_options();
        let seeds: Vec<u64> = config
            .qubits
            .iter()
            .map(|&n| dataset_seed(config.seed, n))
            .collect();
        for (&n, &seed) in config.qubits.iter().zip(&seeds) {
            let result = benchmark_classical(
                n,
                config.m,
                &template,
                seed,
                config.low,
                config.high,
                &options,
            )?;
            if result.resolution_warning {
                report.warnings.push(format!(
                    "n={n}: timer resolution exceeds 1% of the measured median"
                ));
            }
            report.benchmarks.push(result);
            report::write_file(
                &out_path(config, BENCH_CSV),
                &report::bench_csv(&report.benchmarks, &seeds),
            )?;
        }
        Ok(())
    })();
    finish(report, config, start, outcome)
}
