//! `trotmit` command-line harness.
//!
//! Each subcommand runs one experiment and writes `<name>.csv` plus a
//! `<name>.meta.json` sidecar into the output directory.
//!
//! Exit codes: 0 success, 2 config error, 3 infeasible experiment,
//! 4 numerical failure, 1 I/O failure while writing results.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use trotmit::harness::{Experiment, ExperimentConfig};
use trotmit::ErrorKind;

#[derive(Parser)]
#[command(
    name = "trotmit",
    version,
    about = "Noisy Trotter simulation experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace distance to the exact state over a grid of Trotter step counts.
    Nopt(RunArgs),
    /// Raw and physically extrapolated expectation values against 1/N.
    Continuity(RunArgs),
    /// Mean squared error against total shot budget for every mitigation mode.
    Budget(RunArgs),
    /// Two-point extrapolation error bound next to the measured error.
    Bound(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML experiment configuration; defaults apply when omitted.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Directory for the CSV and metadata files.
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Base seed; overrides `run.seed`.
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,
    /// Trials per budget point; overrides `run.trials`.
    #[arg(long, value_name = "COUNT")]
    trials: Option<usize>,
    /// Worker threads, 0 for one per core; overrides `run.threads`.
    #[arg(long, value_name = "COUNT")]
    threads: Option<usize>,
}

enum Failure {
    Run(trotmit::Error),
    Io(anyhow::Error),
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Config => 2,
        ErrorKind::Infeasible => 3,
        ErrorKind::Numerical => 4,
    }
}

fn load_config(args: &RunArgs) -> Result<ExperimentConfig, trotmit::Error> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                trotmit::Error::Config(format!("cannot read {}: {e}", path.display()))
            })?;
            ExperimentConfig::from_toml_str(&text)?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.run.seed = seed;
    }
    if let Some(trials) = args.trials {
        cfg.run.trials = trials;
    }
    if let Some(threads) = args.threads {
        cfg.run.threads = threads;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_outputs(
    dir: &Path,
    csv_name: &str,
    csv: &str,
    meta_name: &str,
    meta: &str,
) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (name, body) in [(csv_name, csv), (meta_name, meta)] {
        let path = dir.join(name);
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run(experiment: Experiment, args: &RunArgs) -> Result<(), Failure> {
    let cfg = load_config(args).map_err(Failure::Run)?;
    let record = experiment.run(&cfg).map_err(Failure::Run)?;
    write_outputs(
        &args.out,
        &record.csv_file_name(),
        &record.csv,
        &record.metadata_file_name(),
        &record.metadata_json(),
    )
    .map_err(Failure::Io)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (experiment, args) = match &cli.command {
        Command::Nopt(a) => (Experiment::Nopt, a),
        Command::Continuity(a) => (Experiment::Continuity, a),
        Command::Budget(a) => (Experiment::Budget, a),
        Command::Bound(a) => (Experiment::Bound, a),
    };
    match run(experiment, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.kind()))
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
