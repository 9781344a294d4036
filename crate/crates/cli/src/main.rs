//! `kmlab`: classify Cartan matrices, compute nilpotency degrees of
//! inversion sets, sweep Weyl groups and run the verification suites.

mod cache;
mod commands;
mod config;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kmlab_core::verify::Suite;

use crate::config::Format;

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const CHECK: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const UNDECIDED: u8 = 3;

    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::new(Failure::USAGE, message)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "kmlab",
    version,
    about = "Nilpotency degrees of Kac-Moody inversion sets"
)]
struct Cli {
    /// TOML file with default settings; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Size of the worker pool used by sweeps.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Directory for cached root tables.
    #[arg(long, global = true, env = "KMLAB_CACHE", value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GcmArg {
    /// GCM file: `{"name": ..., "matrix": [[...]]}`.
    #[arg(long, value_name = "FILE")]
    gcm: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the type of a GCM (Finite, Affine with its null root, Indefinite).
    Classify { path: PathBuf },
    /// Nilpotency degree of Δ(w) with a witness sequence.
    Degree {
        #[command(flatten)]
        gcm: GcmArg,
        /// Comma-separated 1-based word, e.g. `1,2,1`.
        #[arg(long, allow_hyphen_values = false)]
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Degrees of all elements up to a length.
    Sweep {
        #[command(flatten)]
        gcm: GcmArg,
        #[arg(long)]
        max_length: Option<usize>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run a verification suite.
    Verify {
        #[command(flatten)]
        gcm: GcmArg,
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        max_height: Option<i64>,
        #[arg(long)]
        max_length: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Chamber-walk budget.
        #[arg(long)]
        max_steps: Option<usize>,
        /// Write the reports as JSON.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Largest pairing over prenilpotent pairs summing to a root.
    Kbound {
        #[command(flatten)]
        gcm: GcmArg,
        #[arg(long)]
        max_height: Option<i64>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("kmlab: {f}");
            }
            ExitCode::from(f.code)
        }
    }
}
