// SPDX-License-Identifier: Apache-2.0

//! `sedecim`: density, criterion, sum and verification runs.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sedecim", version, about = "Experiments on the 16-rank of Q(sqrt(-p))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Counts of p with 8 | h(-p) and 16 | h(-p), and S(X), at decade checkpoints.
    Density {
        #[arg(long)]
        x_max: u64,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compares the Hasse and sequence criteria against class numbers.
    Criterion {
        #[arg(long)]
        p_max: u64,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Evaluates one type I, type II or S(X) sum.
    Sums {
        #[command(subcommand)]
        kind: SumCommand,
    },
    /// Runs verification suites and prints `name,trials,failures,skips`.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Prints h(-p) for an odd prime p.
    ClassNumber {
        #[arg(short)]
        p: u64,
    },
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Prime,
    Ideal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PluginArg {
    Ones,
    OmegaSign,
    Seeded,
}

#[derive(Debug, Subcommand)]
enum SumCommand {
    /// A(X, d) for the ideal generated by `a,b,c,d`.
    Type1 {
        #[arg(long)]
        x: u64,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// B(M, N) with the chosen coefficients.
    Type2 {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = PluginArg::OmegaSign)]
        plugin: PluginArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// S(X) over primes or over prime-power ideals.
    #[command(name = "S", alias = "s")]
    S {
        #[arg(long)]
        x: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Prime)]
        mode: ModeArg,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Outcome of a command, mapped onto the process exit status.
#[derive(Debug)]
pub enum Failure {
    /// A verification or criterion check failed (exit 1).
    Check,
    /// Bad usage, unreadable input or unwritable output (exit 2).
    Usage(String),
}

impl From<sedecim::Error> for Failure {
    fn from(e: sedecim::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("SEDECIM_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("SEDECIM_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Density { x_max, cache, out } => commands::density(x_max, cache.as_deref(), out.as_deref()),
        Command::Criterion { p_max, cache } => commands::criterion(p_max, cache.as_deref()),
        Command::Sums { kind } => commands::sums(kind),
        Command::Verify { suite, trials, seed } => commands::verify(&suite, trials, seed),
        Command::ClassNumber { p } => commands::class_number(p),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("sedecim: {msg}");
            ExitCode::from(2)
        }
    }
}
