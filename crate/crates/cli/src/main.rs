//! `resonance-sizer`: characteristic determinants, sizes and resonance counts
//! of point-interaction Hamiltonians from a JSON configuration.
//!
//! Exit codes: 0 success, 2 configuration or validation error, 3 numerical failure.

mod commands;
mod config;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use resonance_core::Error;

use crate::config::RunConfig;

#[derive(Parser, Debug)]
#[command(name = "resonance-sizer", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ConfigArg {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical exponential-polynomial form and cancellation report.
    Expand {
        #[command(flatten)]
        config: ConfigArg,
        /// Write frequencies.csv and coefficients.csv instead of JSON.
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Keep only the b = 0 term ∏(iz − 4πa_j).
        #[arg(long)]
        p0_only: bool,
    },
    /// Compare the effective size with V(Y) and check genericity.
    Classify {
        #[command(flatten)]
        config: ConfigArg,
        /// Also fit the slope of N(R) over the counting grid.
        #[arg(long)]
        empirical: bool,
    },
    /// N(R) over the counting grid, as CSV with columns R,count,winding_residual.
    Count {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        p0_only: bool,
    },
    /// Locate zeros inside the configured region.
    Resonances {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        p0_only: bool,
    },
    /// Genericity and Weyl fractions over random configurations.
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a configuration file and exit.
    Validate {
        #[command(flatten)]
        config: ConfigArg,
    },
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::Numeric(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ContourThroughZero { .. }
            | Error::QuadratureDivergence { .. }
            | Error::TooFewPoints(_) => CliError::Numeric(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Expand {
            config,
            csv,
            out_dir,
            p0_only,
        } => commands::expand_cmd(&RunConfig::load(&config.config)?, p0_only, csv, &out_dir),
        Command::Classify { config, empirical } => {
            commands::classify_cmd(&RunConfig::load(&config.config)?, empirical)
        }
        Command::Count { config, p0_only } => {
            commands::count_cmd(&RunConfig::load(&config.config)?, p0_only)
        }
        Command::Resonances {
            config,
            csv,
            p0_only,
        } => commands::resonances_cmd(&RunConfig::load(&config.config)?, p0_only, csv),
        Command::Scan { n, trials, seed } => commands::scan_cmd(n, trials, seed),
        Command::Validate { config } => commands::validate_cmd(&RunConfig::load(&config.config)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("resonance-sizer: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
