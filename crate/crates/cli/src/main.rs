use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use qkonc::config::env_seed;
use qkonc::{run, CliError, ConfigLayer, ExperimentConfig};
use qkonc_core::Scope;

#[derive(Parser)]
#[command(
    name = "qkonc",
    version,
    about = "Fidelity-kernel concentration and quantum runtime experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep qubit counts and fit the decay of kernel mean and spread.
    Concentration(Common),
    /// Model quantum runtime from the fitted decay and benchmark classical simulation.
    Compare(Common),
    /// Evaluate shot budgets R(n) from a stored fits.json.
    Shots {
        #[command(flatten)]
        common: Common,
        /// fits.json written by `concentration` or `compare`.
        #[arg(long)]
        fits: PathBuf,
    },
    /// Benchmark classical Gram-matrix simulation time only.
    Bench(Common),
}

#[derive(Args)]
struct Common {
    /// JSON config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated ascending qubit counts.
    #[arg(long, value_delimiter = ',')]
    qubits: Option<Vec<usize>>,
    #[arg(long)]
    m: Option<usize>,
    /// Base seed (falls back to $QKONC_SEED).
    #[arg(long)]
    seed: Option<u64>,
    /// Feature-map repetitions.
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    low: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    high: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Gate-layer time in seconds.
    #[arg(long = "t-gate")]
    t_gate: Option<f64>,
    /// Measurement time in seconds.
    #[arg(long = "t-meas")]
    t_meas: Option<f64>,
    /// per-entry or full-gram.
    #[arg(long, value_parser = parse_scope)]
    scope: Option<Scope>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Timed benchmark runs per qubit count (at least 3).
    #[arg(long = "bench-reps")]
    bench_reps: Option<usize>,
    /// Parallel Gram assembly in benchmarks (exploratory).
    #[arg(long)]
    parallel: bool,
    /// Time dataset generation together with the Gram build.
    #[arg(long = "include-dataset")]
    include_dataset: bool,
    /// Smallest n used in runtime growth fits.
    #[arg(long = "growth-min-n")]
    growth_min_n: Option<usize>,
}

fn parse_scope(s: &str) -> Result<Scope, String> {
    s.parse().map_err(|e: qkonc_core::Error| e.to_string())
}

impl Common {
    fn resolve(self) -> qkonc::Result<ExperimentConfig> {
        let file = self
            .config
            .as_deref()
            .map(ConfigLayer::from_file)
            .transpose()?;
        let flags = ConfigLayer {
            qubits: self.qubits,
            m: self.m,
            seed: self.seed,
            reps: self.reps,
            low: self.low,
            high: self.high,
            t_gate: self.t_gate,
            t_meas: self.t_meas,
            gamma: self.gamma,
            scope: self.scope,
            out: self.out,
            bench_repetitions: self.bench_reps,
            parallel: self.parallel.then_some(true),
            include_dataset: self.include_dataset.then_some(true),
            growth_min_n: self.growth_min_n,
        };
        ExperimentConfig::resolve(file, flags, env_seed()?)
    }
}

fn print_report(report: &qkonc::ExperimentReport) {
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    println!(
        "{} finished in {:.3} s; results in {}",
        report.command,
        report.wall_time_s,
        report.config.out.display()
    );
}

fn execute(cli: Cli) -> qkonc::Result<()> {
    match cli.command {
        Command::Concentration(common) => {
            print_report(&run::run_concentration(&common.resolve()?)?)
        }
        Command::Compare(common) => print_report(&run::run_comparison(&common.resolve()?)?),
        Command::Bench(common) => print_report(&run::run_bench(&common.resolve()?)?),
        Command::Shots { common, fits } => {
            let config = common.resolve()?;
            let rows = run::run_shots(&config, &fits)?;
            println!("n,shots");
            for r in rows {
                println!("{},{:.6e}", r.n, r.shots);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            eprintln!("{}", CliError::Usage(first.to_string()).to_json_line());
            return ExitCode::from(2);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json_line());
            ExitCode::FAILURE
        }
    }
}
