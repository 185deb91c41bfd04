use std::path::Path;
use std::process::Command;

use qkonc::report::{self, ExperimentReport, COMPARISON_HEADER, CONCENTRATION_HEADER};
use qkonc::run::{self, COMPARISON_CSV, CONCENTRATION_CSV, FITS_JSON, REPORT_JSON};
use qkonc::{ConfigLayer, ExperimentConfig};
use qkonc_core::runtime::{runtime_record, BenchmarkResult, MachineDescriptor};
use qkonc_core::{ExpFit, RuntimeParams, Scope, ShotPlan};

fn qkonc() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qkonc"));
    cmd.env_remove("QKONC_SEED");
    cmd
}

fn config(out: &Path) -> ExperimentConfig {
    ExperimentConfig {
        out: out.to_path_buf(),
        ..Default::default()
    }
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn concentration_default_run() {
    let dir = tempfile::tempdir().unwrap();
    let report = run::run_concentration(&config(dir.path())).unwrap();
    let csv = std::fs::read_to_string(dir.path().join(CONCENTRATION_CSV)).unwrap();
    assert!(csv.starts_with(&format!("{CONCENTRATION_HEADER}\n")));
    let rows = csv_rows(&dir.path().join(CONCENTRATION_CSV));
    assert_eq!(rows.len(), 6);
    // reparsed cells equal the in-memory values bit for bit
    for (row, p) in rows.iter().zip(&report.concentration) {
        assert_eq!(row[0].parse::<usize>().unwrap(), p.n);
        assert_eq!(row[2].parse::<u64>().unwrap(), p.seed);
        assert_eq!(row[3].parse::<f64>().unwrap(), p.mean);
        assert_eq!(row[4].parse::<f64>().unwrap(), p.std);
    }
    let fits: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join(FITS_JSON)).unwrap())
            .unwrap();
    for key in ["mu", "sigma"] {
        assert!(fits[key]["C"].as_f64().unwrap() > 0.0);
        assert!(fits[key]["alpha"].is_f64());
        assert!((0.0..=1.0).contains(&fits[key]["r2"].as_f64().unwrap()));
    }
    let svg = std::fs::read_to_string(dir.path().join("concentration.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("stroke-dasharray"));
}

#[test]
fn single_point_sweep_skips_fit() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig {
        qubits: vec![2],
        ..config(dir.path())
    };
    let report = run::run_concentration(&cfg).unwrap();
    assert_eq!(csv_rows(&dir.path().join(CONCENTRATION_CSV)).len(), 1);
    let fits = std::fs::read_to_string(dir.path().join(FITS_JSON)).unwrap();
    assert!(fits.contains("insufficient points"));
    assert_eq!(report.fits.unwrap().mu, None);
}

#[test]
fn echoed_config_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig {
        qubits: vec![2, 3, 5],
        m: 12,
        seed: 7,
        gamma: 3.25,
        scope: Scope::PerEntry,
        ..config(dir.path())
    };
    run::run_concentration(&cfg).unwrap();
    let text = std::fs::read_to_string(dir.path().join(REPORT_JSON)).unwrap();
    let report: ExperimentReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.config, cfg);
    assert!(report.seed_derivation.contains("XOR"));

    // feeding the echoed config back reproduces the modeled numbers
    let echoed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let layer: ConfigLayer = serde_json::from_value(echoed["config"].clone()).unwrap();
    let again = ExperimentConfig::resolve(Some(layer), ConfigLayer::default(), None).unwrap();
    let rerun = run::run_concentration(&again).unwrap();
    assert_eq!(rerun.concentration, report.concentration);
    assert_eq!(rerun.fits, report.fits);
}

#[test]
fn comparison_scopes_and_gamma() {
    let dir = tempfile::tempdir().unwrap();
    let base = ExperimentConfig {
        qubits: vec![2, 3, 4, 5],
        ..config(&dir.path().join("full"))
    };
    let full = run::run_comparison(&base).unwrap();
    let header = std::fs::read_to_string(dir.path().join("full").join(COMPARISON_CSV)).unwrap();
    assert!(header.starts_with(COMPARISON_HEADER));

    let per = run::run_comparison(&ExperimentConfig {
        scope: Scope::PerEntry,
        out: dir.path().join("per"),
        ..base.clone()
    })
    .unwrap();
    let g20 = run::run_comparison(&ExperimentConfig {
        gamma: 20.0,
        out: dir.path().join("g20"),
        ..base.clone()
    })
    .unwrap();

    let recs = |r: &ExperimentReport| r.runtime.clone().unwrap().records;
    for ((f, p), g) in recs(&full).iter().zip(recs(&per)).zip(recs(&g20)) {
        assert_eq!(f.t_quantum_s, f.shots * f.t_circ_s * 4950.0);
        assert_eq!(f.t_quantum_s, p.t_quantum_s * 4950.0);
        assert_eq!(g.t_quantum_s, 4.0 * f.t_quantum_s);
        assert!(f.t_classical_s > 0.0 && p.t_classical_s > 0.0);
    }
    assert!(full.quantum_growth.is_some() && full.classical_growth.is_some());
}

#[test]
fn gamma_leaves_classical_time_alone() {
    let fit = |c, alpha| ExpFit {
        c,
        alpha,
        r_squared: 1.0,
    };
    let bench = BenchmarkResult {
        n: 6,
        m: 100,
        median_s: 0.0123,
        samples_s: vec![0.0122, 0.0123, 0.0124],
        timer_resolution_s: 1e-9,
        resolution_warning: false,
        machine: MachineDescriptor::detect(),
    };
    let params = RuntimeParams::default();
    let p10 = ShotPlan::new(10.0, fit(1.0, 0.69), fit(0.7, 0.56)).unwrap();
    let p20 = ShotPlan { gamma: 20.0, ..p10 };
    let a = runtime_record(6, 100, &params, &p10, Scope::FullGram, &bench).unwrap();
    let b = runtime_record(6, 100, &params, &p20, Scope::FullGram, &bench).unwrap();
    assert_eq!(a.t_classical_s, b.t_classical_s);
    assert_eq!(b.t_quantum_s, 4.0 * a.t_quantum_s);
    let per = runtime_record(6, 100, &params, &p10, Scope::PerEntry, &bench).unwrap();
    assert_eq!(per.t_classical_s * 4950.0, a.t_classical_s);
}

#[test]
fn failed_comparison_flushes_partial_results() {
    let dir = tempfile::tempdir().unwrap();
    // a directory where the comparison CSV should go makes the write fail
    std::fs::create_dir_all(dir.path().join(COMPARISON_CSV)).unwrap();
    let cfg = ExperimentConfig {
        qubits: vec![2, 3],
        m: 10,
        ..config(dir.path())
    };
    let err = run::run_comparison(&cfg).unwrap_err();
    assert_eq!(err.kind(), "io");
    assert_eq!(csv_rows(&dir.path().join(CONCENTRATION_CSV)).len(), 2);
    let report: ExperimentReport =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join(REPORT_JSON)).unwrap())
            .unwrap();
    assert_eq!(report.status, "failed");
    assert!(report.error.is_some());
}

#[test]
fn empty_report_emits_valid_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = ExperimentReport::new("compare", &config(dir.path()));
    r.runtime = None;
    report::emit_csv(&r, &dir.path().join("c.csv")).unwrap();
    report::emit_svg(&r, &dir.path().join("c.svg")).unwrap();
    assert_eq!(
        std::fs::read_to_string(dir.path().join("c.csv")).unwrap(),
        format!("{COMPARISON_HEADER}\n")
    );
    let svg = std::fs::read_to_string(dir.path().join("c.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));

    let r = ExperimentReport::new("concentration", &config(dir.path()));
    report::emit_csv(&r, &dir.path().join("k.csv")).unwrap();
    assert_eq!(
        std::fs::read_to_string(dir.path().join("k.csv")).unwrap(),
        format!("{CONCENTRATION_HEADER}\n")
    );
}

#[test]
fn binary_config_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("cfg.json");
    std::fs::write(&cfg_path, r#"{"qubits": [2, 3, 4], "m": 8, "seed": 5}"#).unwrap();
    let out = dir.path().join("out");
    let status = qkonc()
        .args(["concentration", "--config"])
        .arg(&cfg_path)
        .args(["--seed", "11", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let rows = csv_rows(&out.join(CONCENTRATION_CSV));
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[1] == "8"));
    assert_eq!(rows[0][2], (11u64 ^ 2).to_string());
}

#[test]
fn binary_env_seed_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let status = qkonc()
        .env("QKONC_SEED", "1000")
        .args(["concentration", "--qubits", "3", "--m", "4", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(
        csv_rows(&dir.path().join(CONCENTRATION_CSV))[0][2],
        (1000u64 ^ 3).to_string()
    );
}

#[test]
fn binary_shots_from_fits() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("fits.json"),
        r#"{"mu": {"C": 0.5, "alpha": 0.3, "r2": 1.0}, "sigma": {"C": 0.2, "alpha": 0.35, "r2": 1.0}, "status": "ok"}"#,
    )
    .unwrap();
    let output = qkonc()
        .args(["shots", "--qubits", "5", "--gamma", "10", "--fits"])
        .arg(dir.path().join("fits.json"))
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(output.status.success());
    let rows = csv_rows(&dir.path().join("shots.csv"));
    let shots: f64 = rows[0][3].parse().unwrap();
    assert!((shots - 8_205.869_329_475_732).abs() < 1e-8);
}

#[test]
fn binary_bench_writes_medians() {
    let dir = tempfile::tempdir().unwrap();
    let status = qkonc()
        .args(["bench", "--qubits", "2,3", "--m", "10", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let rows = csv_rows(&dir.path().join("bench.csv"));
    assert_eq!(rows.len(), 2);
    assert!(rows
        .iter()
        .all(|r| r[3].parse::<f64>().unwrap() > 0.0 && r[4] == "3"));
}

#[test]
fn binary_errors_are_single_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec!["concentration".into(), "--qubits".into(), "4,2".into()],
        vec![
            "concentration".into(),
            "--out".into(),
            blocker.join("sub").display().to_string(),
        ],
        vec!["compare".into(), "--scope".into(), "sideways".into()],
        vec!["frobnicate".into()],
    ];
    for args in cases {
        let output = qkonc()
            .args(&args)
            .current_dir(dir.path())
            .output()
            .unwrap();
        assert!(!output.status.success(), "{args:?}");
        let stderr = String::from_utf8(output.stderr).unwrap();
        assert_eq!(stderr.trim_end().lines().count(), 1, "{stderr}");
        let v: serde_json::Value = serde_json::from_str(stderr.trim_end()).unwrap();
        assert!(v["error"].is_string() && v["message"].is_string());
    }
    // unwritable output is detected before any results exist
    assert!(!blocker.join("sub").exists());
}
