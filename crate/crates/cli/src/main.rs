use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lucas_index::{Error, LucasParams};

mod render;

#[derive(Parser, Debug)]
#[command(name = "lucas-index", version, about = "Densities of primes with a given index of appearance in a Lucas sequence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, allow_hyphen_values = true)]
    a1: i64,
    #[arg(long, allow_hyphen_values = true)]
    a2: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Show gamma = s gamma0^h and the coefficient expansion of the Kummer degrees.
    Decompose {
        #[command(flatten)]
        common: Common,
    },
    /// Print G_u over one minimal period.
    Gtable {
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form densities for t = 1..=t_max.
    Density {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 40)]
        t_max: u64,
    },
    /// Truncated Galois-theoretic series for a single t.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        t: u64,
        #[arg(long, default_value_t = 10_000)]
        terms: u64,
    },
    /// Compare closed-form densities with a scan over the first primes.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 40)]
        t_max: u64,
        #[arg(long, default_value_t = 100_000)]
        primes: u64,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
    },
    /// Per-n condition cases, #C_n and [K_n : Q].
    Conditions {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 48)]
        n_max: u64,
    },
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Exit status for each failure kind; clap itself uses 2 for usage errors.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::ZeroCoefficient { .. } => 3,
        Error::CoefficientTooLarge(_) => 4,
        Error::SquareDiscriminant(_) => 5,
        Error::Degenerate => 6,
        Error::UnsupportedDiscriminant(_) => 7,
        Error::ExcludedPrime { .. } => 8,
        Error::InvalidArgument(_) => 9,
        Error::Resource(_) => 10,
        Error::Unsupported(_) => 11,
        Error::Inconsistent(_) => 12,
    }
}

const IO_FAILURE: u8 = 13;

fn sieve_limit_override() -> Result<Option<u64>, Error> {
    match std::env::var("LUCAS_SIEVE_LIMIT") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidArgument(format!("LUCAS_SIEVE_LIMIT must be an integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn run(command: &Command) -> Result<String, Error> {
    let common = match command {
        Command::Decompose { common }
        | Command::Gtable { common }
        | Command::Density { common, .. }
        | Command::Oracle { common, .. }
        | Command::Compare { common, .. }
        | Command::Conditions { common, .. } => common,
    };
    let params = LucasParams::new(common.a1, common.a2)?;
    let fmt = common.format;
    match *command {
        Command::Decompose { .. } => render::decompose(&params, fmt),
        Command::Gtable { .. } => render::gtable(&params, fmt),
        Command::Density { t_max, .. } => render::density(&params, t_max, fmt),
        Command::Oracle { t, terms, .. } => render::oracle(&params, t, terms, fmt),
        Command::Compare { t_max, primes, workers, .. } => {
            render::compare(&params, t_max, primes, workers, sieve_limit_override()?, fmt)
        }
        Command::Conditions { n_max, .. } => render::conditions(&params, n_max, fmt),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = match &cli.command {
        Command::Decompose { common }
        | Command::Gtable { common }
        | Command::Density { common, .. }
        | Command::Oracle { common, .. }
        | Command::Compare { common, .. }
        | Command::Conditions { common, .. } => common.out.clone(),
    };
    // everything is rendered before anything is written, so a failure never
    // leaves a truncated table behind
    let text = match run(&cli.command) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(exit_code(&err));
        }
    };
    let written = match out_path {
        Some(path) => fs::write(&path, text.as_bytes()),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(IO_FAILURE)
        }
    }
}
