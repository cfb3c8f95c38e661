//! Command-line front end: run feedback suites or single runs from config
//! files and presets, query the exact oracle for a stored state, and sweep
//! the feedback step time.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 configuration error.

mod config;
mod report;
mod svg;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use fqergo::experiments::{
    linear_grid, single_qubit_suite_with, speed_sweep, summarize_suite, two_qubit_suite_with,
    SuiteOptions, SystemKind,
};
use fqergo::feedback::{beta_labels, run_fqergo};
use fqergo::oracle::{oracle_report, oracle_report_two_qubit, OracleReport};

use config::{build_engine_config, build_initial_state, parse_run_config, RunConfig};
use report::{single_run_outputs, suite_outputs, sweep_outputs};

/// Environment variable naming the default output directory.
const OUT_ENV: &str = "FQERGO_OUT";

#[derive(Parser)]
#[command(
    name = "fqergo",
    about = "Feedback-based ergotropy estimation on one- and two-qubit registers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a single feedback run or a named suite and write its reports.
    Run(RunArgs),
    /// Print the exact oracle report for a density-matrix file as JSON.
    Oracle(OracleArgs),
    /// Sweep the step time ω₀τ and record convergence iteration counts.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Config file (TOML); mutually exclusive with --preset.
    #[arg(long, value_name = "FILE", conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Named preset: 1q-fig2, 2q-fig3, nmr-preset, bell.
    #[arg(long)]
    preset: Option<String>,
    /// Override the master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the error model (none, random_rotation:5deg, random_hamiltonian:2deg).
    #[arg(long)]
    error: Option<String>,
    /// Override the output directory (default: $FQERGO_OUT or ./fqergo-out).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Comma-separated output formats (csv,json,svg).
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    /// Density-matrix file in the shared text format.
    #[arg(long, value_name = "FILE")]
    state: PathBuf,
    /// Hamiltonian model name: 1q-default, 2q-default, 2q-global.
    #[arg(long, value_name = "NAME")]
    hamiltonian: String,
}

#[derive(Args)]
struct SweepArgs {
    /// System size: 1q or 2q.
    #[arg(long)]
    system: String,
    /// Step-time grid as start:end:steps (e.g. 0.1:4.0:40).
    #[arg(long)]
    tau: String,
    /// Random initial states per grid point.
    #[arg(long, default_value_t = 10)]
    states: usize,
    /// Master seed.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Output directory (default: $FQERGO_OUT or ./fqergo-out).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Comma-separated output formats (csv,json,svg).
    #[arg(long)]
    format: Option<String>,
}

/// Errors that indicate a bad configuration rather than a runtime fault.
fn is_config_error(err: &anyhow::Error) -> bool {
    err.to_string().contains("config error")
        || err.to_string().contains("unknown preset")
        || err.to_string().contains("not a valid density matrix")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if is_config_error(&err) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn output_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("fqergo-out"))
}

fn parse_formats(flag: Option<&str>, fallback: &[String]) -> Result<Vec<String>> {
    let formats: Vec<String> = match flag {
        Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
        None => fallback.to_vec(),
    };
    for f in &formats {
        if !matches!(f.as_str(), "csv" | "json" | "svg") {
            bail!("config error: unknown output format `{f}` (csv, json, svg)");
        }
    }
    Ok(formats)
}

fn load_run_config(args: &RunArgs) -> Result<RunConfig> {
    let text = match (&args.config, &args.preset) {
        (Some(path), None) => std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?,
        (None, Some(name)) => config::preset_by_name(name)?.to_string(),
        (None, None) => bail!("config error: pass --preset <name> or --config <file>"),
        (Some(_), Some(_)) => unreachable!("clap enforces exclusivity"),
    };
    let mut run = parse_run_config(&text)?;
    if let Some(seed) = args.seed {
        run.seed = seed;
    }
    if let Some(error) = &args.error {
        config::parse_error_model(error)?;
        run.error = error.clone();
    }
    Ok(run)
}

fn oracle_json_for(run: &RunConfig, rho: &fqergo::states::DensityMatrix) -> Result<serde_json::Value> {
    let report = oracle_for_model(&run.model, rho)?;
    Ok(serde_json::to_value(&report)?)
}

fn oracle_for_model(model: &str, rho: &fqergo::states::DensityMatrix) -> Result<OracleReport> {
    let report = match model {
        "2q-default" | "2q-global" => oracle_report_two_qubit(rho, 1.0, 0.01)?,
        _ => {
            let (h0, _) = fqergo::hamiltonians::model_by_name(model)
                .map_err(|e| anyhow!("config error: {e}"))?;
            oracle_report(rho, &h0)?
        }
    };
    Ok(report)
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let run = load_run_config(&args)?;
    let formats = parse_formats(args.format.as_deref(), &run.output.formats)?;
    let dir = output_dir(args.out.or_else(|| run.output.dir.clone().map(PathBuf::from)));
    let fingerprint = format!(
        "suite={} model={} seed={} tau={} error={}",
        run.suite, run.model, run.seed, run.tau, run.error
    );

    let batch = match run.suite.as_str() {
        "single" => {
            let (h0, engine) = build_engine_config(&run)?;
            let initial = run
                .initial
                .as_ref()
                .expect("validated: single runs carry an initial section");
            let rho = build_initial_state(initial, h0.n_qubits())?;
            let traj = run_fqergo(&rho, &h0, &engine)?;
            let oracle = oracle_json_for(&run, &rho)?;
            single_run_outputs(&traj, &engine, oracle, &fingerprint, &formats)?
        }
        suite @ ("single-qubit" | "two-qubit") => {
            // Engine knobs are validated eagerly so bad values fail before
            // any computation.
            let (_, engine) = build_engine_config(&run)?;
            let options = SuiteOptions {
                measurement: engine.measurement_mode,
                tau: run.tau,
                phase_iterations: run.iterations_local,
                local_channels: config::parse_channels(&run),
            };
            let error_on = run.error != "none";
            let (results, system) = if suite == "single-qubit" {
                (
                    single_qubit_suite_with(run.n_states, error_on, run.seed, &options)?,
                    SystemKind::OneQubit,
                )
            } else {
                (
                    two_qubit_suite_with(run.n_states, error_on, run.seed, &options)?,
                    SystemKind::TwoQubit,
                )
            };
            let summary = summarize_suite(system, run.seed, &run.error, &results);
            let trajectories: Vec<_> = results.iter().map(|(t, _)| t).collect();
            suite_outputs(
                &trajectories,
                &beta_labels(&engine),
                &summary,
                &fingerprint,
                &formats,
            )?
        }
        other => bail!("config error: unknown suite `{other}`"),
    };

    let written = batch.write_all(&dir)?;
    for path in written {
        println!("{}", path.display());
    }
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.state)
        .with_context(|| format!("cannot read state file {}", args.state.display()))?;
    let rho = fqergo::states::from_text(&text)
        .map_err(|e| anyhow!("config error: not a valid density matrix: {e}"))?;
    let report = oracle_for_model(&args.hamiltonian, &rho)?;
    if let Some(gap) = report.gap {
        if fqergo::oracle::gap_is_anomalous(gap, 0.01) {
            eprintln!("warning: ergotropy gap {gap:.4} is below -2J; inputs look inconsistent");
        }
    }
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let system = match args.system.as_str() {
        "1q" => SystemKind::OneQubit,
        "2q" => SystemKind::TwoQubit,
        other => bail!("config error: unknown system `{other}` (1q, 2q)"),
    };
    let grid = parse_tau_grid(&args.tau)?;
    let formats = parse_formats(args.format.as_deref(), &config::OutputSection::default().formats)?;
    let dir = output_dir(args.out);
    let fingerprint = format!(
        "sweep system={} tau={} states={} seed={}",
        args.system, args.tau, args.states, args.seed
    );
    let sweep = speed_sweep(system, &grid, args.states, args.seed)?;
    let written = sweep_outputs(&sweep, &fingerprint, &formats)?.write_all(&dir)?;
    for path in written {
        println!("{}", path.display());
    }
    Ok(())
}

/// Parse "start:end:steps" into a grid.
fn parse_tau_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 2 && parts.len() != 3 {
        bail!("config error: --tau expects start:end:steps, got `{text}`");
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| anyhow!("config error: bad tau start `{}`", parts[0]))?;
    let end: f64 = parts[1]
        .parse()
        .map_err(|_| anyhow!("config error: bad tau end `{}`", parts[1]))?;
    let steps: usize = if parts.len() == 3 {
        parts[2]
            .parse()
            .map_err(|_| anyhow!("config error: bad tau steps `{}`", parts[2]))?
    } else {
        40
    };
    if start.is_nan() || start <= 0.0 || end <= start || steps < 2 {
        bail!("config error: --tau needs 0 < start < end and steps ≥ 2, got `{text}`");
    }
    Ok(linear_grid(start, end, steps))
}
