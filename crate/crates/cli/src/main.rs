//! `latnorm`: command-line front-end for discrete and lattice normal distributions.
//!
//! Every command prints one JSON object on stdout. Exit codes: 0 on success,
//! 2 for malformed input, 3 for numerical failures.

mod commands;
mod paramfile;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const DEFAULT_EPS: f64 = 1e-12;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] latnorm::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Lib(e) if e.is_numerical() => "numerical",
            CliError::Lib(_) => "validation",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "latnorm", version, about = "Discrete and lattice normal distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Target {
    Natural,
    Moment,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Method {
    Exact,
    H1,
    H2,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partition function θ(ξ) with its truncation bound.
    Theta {
        #[arg(short = 'p', long = "params")]
        params: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Probability of one lattice point.
    Pmf {
        #[arg(short = 'p', long = "params")]
        params: PathBuf,
        /// Comma-separated coordinates "l1,...,ld".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Divergence between two members of the family.
    Divergence {
        #[arg(long)]
        kind: String,
        #[arg(short = 'p', long = "p-params")]
        p: PathBuf,
        #[arg(short = 'q', long = "q-params")]
        q: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<f64>,
        /// Also evaluate the brute-force box sum.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Convert between natural and moment parameters.
    Convert {
        #[arg(long, value_enum)]
        to: Target,
        #[arg(short = 'p', long = "params")]
        params: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Draw samples.
    Sample {
        #[arg(short = 'p', long = "params")]
        params: PathBuf,
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Print CSV (header x1,...,xd) instead of JSON.
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Maximum-likelihood fit on Z^d from a CSV sample.
    Mle {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Chernoff information and its optimal skew.
    Chernoff {
        #[arg(short = 'p', long = "p-params")]
        p: PathBuf,
        #[arg(short = 'q', long = "q-params")]
        q: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Recompute the reference Bhattacharyya and KL values.
    Reproduce {
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
}

/// Runs one invocation. Returns the exit code and what to print on stdout.
pub fn run<I, T>(argv: I) -> (u8, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, e.to_string());
            }
            eprint!("{e}");
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            return (2, error_json("usage", first.trim_start_matches("error: ")));
        }
    };
    match commands::dispatch(cli.command) {
        Ok(out) => (0, out),
        Err(e) => {
            eprintln!("latnorm: {e}");
            (e.exit_code(), error_json(e.kind(), &e.to_string()))
        }
    }
}

fn error_json(kind: &str, message: &str) -> String {
    let v: Value = json!({ "error": { "kind": kind, "message": message } });
    format!("{v}\n")
}

fn main() -> ExitCode {
    let (code, out) = run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(code)
}
