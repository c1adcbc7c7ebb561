//! `wfuse` — truth tables, oracle verification, resource costs and plots
//! for W-state fusion schemes.
//!
//! Exit codes: 0 success, 1 check/data failure, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wfuse_cli::commands::{
    cmd_cost, cmd_plot, cmd_truth_table, cmd_verify, CostArgs, CostMode,
};
use wfuse_cli::config::{self, FileConfig};
use wfuse_cli::csv::write_atomic;
use wfuse_cli::error::CliError;
use wfuse_core::cost::default_sets;
use wfuse_core::types::SchemeId;

#[derive(Parser)]
#[command(
    name = "wfuse",
    version,
    about = "Simulate and plan W-state fusion: truth tables, oracle verification, resource costs, plots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Shared {
    /// Fusion scheme: three | two-basic | two-enhanced
    #[arg(long)]
    scheme: Option<String>,
    /// Monte Carlo runs per target
    #[arg(long)]
    runs: Option<u64>,
    /// Master seed for the Monte Carlo substreams
    #[arg(long)]
    seed: Option<u64>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Key=value config file; flags override file values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Keep recycled two-photon W states in a Bell bin
    #[arg(long)]
    bell_bin: bool,
    /// Custom set boundaries, e.g. "3,4-6,7-15,16-42,43-123,124+"
    #[arg(long)]
    sets: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the eight-row truth table of the three-state scheme as CSV
    TruthTable {
        n: u64,
        m: u64,
        t: u64,
        #[command(flatten)]
        shared: Shared,
    },
    /// Cross-check the analytic engine against the statevector oracle
    Verify {
        /// Largest W size in the matrix (2..=7; the whole matrix must fit
        /// the 24-qubit statevector guard)
        #[arg(long)]
        max_size: Option<u64>,
        #[command(flatten)]
        shared: Shared,
    },
    /// Resource costs: exact no-recycle planning or Monte Carlo recycling
    Cost {
        /// Target W sizes, comma separated
        #[arg(long, value_delimiter = ',')]
        targets: Vec<u64>,
        /// norecycle | recycle
        #[arg(long)]
        mode: Option<String>,
        /// Recycle mode: stop at this set index (alternative to --targets)
        #[arg(long)]
        target_set: Option<usize>,
        #[command(flatten)]
        shared: Shared,
    },
    /// Render cost CSVs as a log-scale SVG chart
    Plot {
        /// Cost CSV files produced by `wfuse cost`
        #[arg(required = true)]
        csv: Vec<PathBuf>,
        #[command(flatten)]
        shared: Shared,
    },
}

fn file_config(shared: &Shared) -> Result<FileConfig, CliError> {
    match &shared.config {
        Some(path) => config::load(path),
        None => Ok(FileConfig::default()),
    }
}

/// Emit a table or document: to `--out` (atomic) or stdout.
fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::TruthTable { n, m, t, shared } => {
            let file = file_config(&shared)?;
            let table = cmd_truth_table(n, m, t)?;
            emit(shared.out.as_ref().or(file.out.as_ref()), &table.to_csv_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { max_size, shared } => {
            let file = file_config(&shared)?;
            let max_size = max_size.or(file.max_size).unwrap_or(4);
            let report = cmd_verify(max_size)?;
            for line in &report.lines {
                println!("{line}");
            }
            for failure in &report.failures {
                eprintln!("FAIL {failure}");
            }
            if report.all_passed() {
                println!("verify: all {} checks passed", report.checks);
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "verify: {} of {} checks failed",
                    report.failures.len(),
                    report.checks
                );
                Ok(ExitCode::from(1))
            }
        }
        Command::Cost {
            targets,
            mode,
            target_set,
            shared,
        } => {
            let file = file_config(&shared)?;
            let scheme: SchemeId = shared
                .scheme
                .or(file.scheme)
                .ok_or_else(|| CliError::Usage("cost: --scheme is required".into()))?
                .parse()
                .map_err(CliError::Usage)?;
            let mode: CostMode = mode
                .or(file.mode)
                .unwrap_or_else(|| "norecycle".into())
                .parse()
                .map_err(CliError::Usage)?;
            let sets = match shared.sets.or(file.sets) {
                Some(spec) => config::parse_sets(&spec)?,
                None => default_sets(scheme),
            };
            let args = CostArgs {
                scheme,
                mode,
                targets: if targets.is_empty() {
                    file.targets.unwrap_or_default()
                } else {
                    targets
                },
                target_set: target_set.or(file.target_set),
                runs: shared.runs.or(file.runs).unwrap_or(1000),
                seed: shared.seed.or(file.seed).unwrap_or(0),
                sets,
                bell_bin: shared.bell_bin || file.bell_bin.unwrap_or(false),
                fusion_order: file.fusion_order.unwrap_or_default(),
            };
            let outcome = cmd_cost(&args)?;
            emit(shared.out.as_ref().or(file.out.as_ref()), &outcome.table.to_csv_string())?;
            if outcome.row_errors.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                for e in &outcome.row_errors {
                    eprintln!("error: {e}");
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Plot { csv, shared } => {
            let file = file_config(&shared)?;
            let svg = cmd_plot(&csv)?;
            let out = shared
                .out
                .or(file.out)
                .ok_or_else(|| CliError::Usage("plot: --out <file.svg> is required".into()))?;
            write_atomic(&out, svg.as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
