//! Result records and their CSV / JSON / SVG renderings.

use serde::{Deserialize, Serialize};
use std::path::Path;

use qkonc_core::runtime::{BenchmarkResult, MachineDescriptor, RuntimeCurve};
use qkonc_core::{ConcentrationPoint, ExpFit};

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::svg::{Chart, Series, Style};

pub const CONCENTRATION_HEADER: &str = "n,m,seed,mean_k,std_k";
pub const COMPARISON_HEADER: &str = "n,layers,shots,t_circ_s,t_quantum_s,t_classical_s,scope";
pub const SHOTS_HEADER: &str = "n,k_model,sigma_model,shots";
pub const BENCH_HEADER: &str = "n,m,seed,median_s,runs,timer_resolution_s,warning";

pub const SEED_DERIVATION: &str = "the dataset for qubit count n is drawn from a ChaCha8 stream \
     seeded with (seed XOR n); m points, coordinates i.i.d. uniform on [low, high) in qubit order";

pub const STATUS_OK: &str = "ok";
pub const STATUS_INSUFFICIENT: &str = "insufficient points";
pub const STATUS_FAILED: &str = "failed";

/// Float rendering for CSV cells: 17 significant digits, exact on reparse.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Decay fits of mean and spread, as stored in `fits.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitsFile {
    pub status: String,
    pub mu: Option<ExpFit>,
    pub sigma: Option<ExpFit>,
}

impl FitsFile {
    pub fn fitted(mu: ExpFit, sigma: ExpFit) -> Self {
        Self {
            status: STATUS_OK.into(),
            mu: Some(mu),
            sigma: Some(sigma),
        }
    }

    pub fn insufficient() -> Self {
        Self {
            status: STATUS_INSUFFICIENT.into(),
            mu: None,
            sigma: None,
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Growth of a runtime column, fitted as `C·e^{rate·n}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub rate_per_qubit: f64,
    pub fit: ExpFit,
}

impl From<ExpFit> for GrowthFit {
    fn from(fit: ExpFit) -> Self {
        Self {
            rate_per_qubit: -fit.alpha,
            fit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub status: String,
    pub error: Option<String>,
    pub config: ExperimentConfig,
    pub seed_derivation: String,
    pub machine: MachineDescriptor,
    pub concentration: Vec<ConcentrationPoint>,
    pub fits: Option<FitsFile>,
    pub runtime: Option<RuntimeCurve>,
    pub benchmarks: Vec<BenchmarkResult>,
    pub quantum_growth: Option<GrowthFit>,
    pub classical_growth: Option<GrowthFit>,
    pub warnings: Vec<String>,
    pub wall_time_s: f64,
}

impl ExperimentReport {
    pub fn new(command: &str, config: &ExperimentConfig) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            status: STATUS_OK.into(),
            error: None,
            config: config.clone(),
            seed_derivation: SEED_DERIVATION.into(),
            machine: MachineDescriptor::detect(),
            concentration: Vec::new(),
            fits: None,
            runtime: None,
            benchmarks: Vec::new(),
            quantum_growth: None,
            classical_growth: None,
            warnings: Vec::new(),
            wall_time_s: 0.0,
        }
    }
}

pub fn concentration_csv(points: &[ConcentrationPoint]) -> String {
    let mut out = format!("{CONCENTRATION_HEADER}\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            p.n,
            p.m,
            p.seed,
            fmt_f64(p.mean),
            fmt_f64(p.std)
        ));
    }
    out
}

pub fn comparison_csv(curve: Option<&RuntimeCurve>) -> String {
    let mut out = format!("{COMPARISON_HEADER}\n");
    for r in curve.map(|c| c.records.as_slice()).unwrap_or_default() {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.n,
            r.layers,
            fmt_f64(r.shots),
            fmt_f64(r.t_circ_s),
            fmt_f64(r.t_quantum_s),
            fmt_f64(r.t_classical_s),
            r.scope
        ));
    }
    out
}

pub fn bench_csv(results: &[BenchmarkResult], seeds: &[u64]) -> String {
    let mut out = format!("{BENCH_HEADER}\n");
    for (b, seed) in results.iter().zip(seeds) {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            b.n,
            b.m,
            seed,
            fmt_f64(b.median_s),
            b.samples_s.len(),
            fmt_f64(b.timer_resolution_s),
            b.resolution_warning
        ));
    }
    out
}

fn fit_curve(fit: &ExpFit, ns: &[f64]) -> Vec<(f64, f64)> {
    let (lo, hi) = ns
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &n| {
            (a.min(n), b.max(n))
        });
    (0..=50)
        .map(|i| lo + (hi - lo) * i as f64 / 50.0)
        .map(|n| (n, fit.eval(n)))
        .collect()
}

/// Mean and spread of kernel entries against n with their decay fits.
pub fn concentration_chart(points: &[ConcentrationPoint], fits: Option<&FitsFile>) -> Chart {
    let ns: Vec<f64> = points.iter().map(|p| p.n as f64).collect();
    let mut series = vec![
        Series {
            label: "mean ⟨K⟩".into(),
            color: "#1f77b4",
            style: Style::Markers,
            points: points.iter().map(|p| (p.n as f64, p.mean)).collect(),
        },
        Series {
            label: "std σ(K)".into(),
            color: "#d62728",
            style: Style::Markers,
            points: points.iter().map(|p| (p.n as f64, p.std)).collect(),
        },
    ];
    if let Some(FitsFile {
        mu: Some(mu),
        sigma: Some(sigma),
        ..
    }) = fits
    {
        series.push(Series {
            label: format!("{:.3}·e^(-{:.3}n)", mu.c, mu.alpha),
            color: "#1f77b4",
            style: Style::Dashed,
            points: fit_curve(mu, &ns),
        });
        series.push(Series {
            label: format!("{:.3}·e^(-{:.3}n)", sigma.c, sigma.alpha),
            color: "#d62728",
            style: Style::Dashed,
            points: fit_curve(sigma, &ns),
        });
    }
    Chart {
        title: format!(
            "Kernel concentration (m = {})",
            points.first().map_or(0, |p| p.m)
        ),
        x_label: "qubits n".into(),
        y_label: "kernel value".into(),
        series,
    }
}

/// Modeled quantum runtime against measured classical simulation time.
pub fn comparison_chart(curve: Option<&RuntimeCurve>) -> Chart {
    let records = curve.map(|c| c.records.as_slice()).unwrap_or_default();
    let scope = curve.map_or("", |c| c.scope.as_str());
    Chart {
        title: format!("Quantum vs classical runtime ({scope})"),
        x_label: "qubits n".into(),
        y_label: "time [s]".into(),
        series: vec![
            Series {
                label: "T_Q (model)".into(),
                color: "#2ca02c",
                style: Style::LineMarkers,
                points: records
                    .iter()
                    .map(|r| (r.n as f64, r.t_quantum_s))
                    .collect(),
            },
            Series {
                label: "T_C (measured)".into(),
                color: "#ff7f0e",
                style: Style::LineMarkers,
                points: records
                    .iter()
                    .map(|r| (r.n as f64, r.t_classical_s))
                    .collect(),
            },
        ],
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Config(format!("serializing {}: {e}", path.display())))?;
    text.push('\n');
    write_file(path, &text)
}

pub(crate) fn emit_csv_concentration(report: &ExperimentReport, path: &Path) -> Result<()> {
    write_file(path, &concentration_csv(&report.concentration))
}

/// Writes the CSV matching the report's command.
pub fn emit_csv(report: &ExperimentReport, path: &Path) -> Result<()> {
    let body = match report.command.as_str() {
        "compare" => comparison_csv(report.runtime.as_ref()),
        _ => concentration_csv(&report.concentration),
    };
    write_file(path, &body)
}

/// Writes the SVG matching the report's command.
pub fn emit_svg(report: &ExperimentReport, path: &Path) -> Result<()> {
    let chart = match report.command.as_str() {
        "compare" => comparison_chart(report.runtime.as_ref()),
        _ => concentration_chart(&report.concentration, report.fits.as_ref()),
    };
    write_file(path, &chart.render())
}

#[cfg(test)]
mod tests {
    use super::*;
    use qkonc_core::{RuntimeRecord, Scope};

    #[test]
    fn headers_match_contract() {
        assert_eq!(concentration_csv(&[]), "n,m,seed,mean_k,std_k\n");
        assert_eq!(
            comparison_csv(None),
            "n,layers,shots,t_circ_s,t_quantum_s,t_classical_s,scope\n"
        );
    }

    #[test]
    fn floats_reparse_exactly() {
        for v in [
            0.1,
            1.4e-7,
            2.0 * std::f64::consts::PI,
            1e-300,
            123456.789,
            0.0,
        ] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
            let digits = s.split('e').next().unwrap().replace(['.', '-'], "");
            assert!(digits.len() >= 15, "{s}");
        }
    }

    #[test]
    fn comparison_rows_reparse() {
        let curve = RuntimeCurve {
            m: 10,
            scope: Scope::PerEntry,
            records: vec![RuntimeRecord {
                n: 3,
                layers: 16,
                shots: 1234.5678,
                t_circ_s: 2.6e-7,
                t_quantum_s: 1234.5678 * 2.6e-7,
                t_classical_s: 3.3e-5,
                scope: Scope::PerEntry,
                bench_warning: false,
            }],
        };
        let csv = comparison_csv(Some(&curve));
        let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(row[0], "3");
        assert_eq!(row[1], "16");
        assert_eq!(row[2].parse::<f64>().unwrap(), 1234.5678);
        assert_eq!(row[4].parse::<f64>().unwrap(), 1234.5678 * 2.6e-7);
        assert_eq!(row[6], "per-entry");
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn fits_json_shape() {
        let fit = ExpFit {
            c: 1.5,
            alpha: 0.25,
            r_squared: 0.99,
        };
        let v = serde_json::to_value(FitsFile::fitted(fit, fit)).unwrap();
        assert_eq!(v["mu"]["C"], 1.5);
        assert_eq!(v["mu"]["alpha"], 0.25);
        assert_eq!(v["sigma"]["r2"], 0.99);
        let v = serde_json::to_value(FitsFile::insufficient()).unwrap();
        assert!(v["mu"].is_null());
        assert_eq!(v["status"], "insufficient points");
    }
}
