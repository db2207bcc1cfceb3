use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qlattice::{EvalMode, DEFAULT_NAIVE_MAX_DIM};
use qlattice_cli::commands::{self, BenchFormat};
use qlattice_cli::CliError;

#[derive(Parser)]
#[command(
    name = "qlattice",
    version,
    about = "Stage-lattice quantum circuit simulator"
)]
struct Cli {
    /// Evaluator to use.
    #[arg(long, global = true, default_value = "efficient")]
    mode: EvalMode,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of samples (`sample`) or independent runs (`simon`).
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Largest dimension the naive evaluator accepts.
    #[arg(long = "max-dim", global = true, default_value_t = DEFAULT_NAIVE_MAX_DIM)]
    max_dim: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a circuit and print the output amplitudes.
    Run {
        file: PathBuf,
        #[arg(long, default_value = "basis:0")]
        input: String,
    },
    /// Evaluate a circuit and sample full measurements.
    Sample {
        file: PathBuf,
        #[arg(long, default_value = "basis:0")]
        input: String,
    },
    /// Time Hadamard-layer circuits over a range of qubit counts.
    Bench {
        n_min: usize,
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        stages: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: BenchFormat,
    },
    /// Run the period-finding algorithm on a function table.
    Simon {
        table: PathBuf,
        /// Oracle queries per run (default 3n).
        #[arg(long)]
        repetitions: Option<usize>,
    },
    /// Split an odd composite with the order-finding reduction.
    Factor {
        n: u64,
        #[arg(long, default_value_t = 50)]
        max_attempts: usize,
    },
    /// Solve g^r = x (mod p) with the two-register circuit.
    ShorDlog {
        p: u64,
        g: u64,
        x: u64,
        #[arg(long, default_value_t = 50)]
        max_tries: usize,
    },
    /// Parse and validate a circuit file.
    Validate { file: PathBuf },
}

fn dispatch(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Run { file, input } => commands::cmd_run(&file, &input, cli.mode, cli.max_dim),
        Command::Sample { file, input } => commands::cmd_sample(
            &file,
            &input,
            cli.mode,
            cli.max_dim,
            cli.trials.unwrap_or(1000),
            cli.seed,
        ),
        Command::Bench {
            n_min,
            n_max,
            stages,
            format,
        } => commands::cmd_bench(n_min, n_max, cli.mode, cli.max_dim, stages, format),
        Command::Simon { table, repetitions } => {
            commands::cmd_simon(&table, cli.trials.unwrap_or(200), cli.seed, repetitions)
        }
        Command::Factor { n, max_attempts } => commands::cmd_factor(n, cli.seed, max_attempts),
        Command::ShorDlog { p, g, x, max_tries } => {
            commands::cmd_dlog(p, g, x, cli.seed, max_tries)
        }
        Command::Validate { file } => commands::cmd_validate(&file),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
