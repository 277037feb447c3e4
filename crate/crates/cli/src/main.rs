mod commands;
mod json;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Faber,
    Grunsky,
    Jump,
    RiggingVerify,
    HsNorm,
    Report,
}

/// Faber polynomials, Grunsky operators and jump decompositions from JSON
/// map and rigging configs.
#[derive(Debug, Parser)]
#[command(name = "grunskykit", version)]
pub struct Args {
    /// Command to run (may also be given as `--command`).
    #[arg(value_enum)]
    pub cmd: Option<Command>,
    #[arg(long = "command", value_enum)]
    pub command: Option<Command>,
    /// Map, jump or rigging config (JSON).
    #[arg(long)]
    pub input: PathBuf,
    /// Output directory; without it the main JSON goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Truncation order K.
    #[arg(long = "order", default_value_t = 8)]
    pub order: usize,
    /// Sample count N (power of two); rigging configs supply their own.
    #[arg(long = "samples")]
    pub samples: Option<usize>,
    /// Residual bound above which the run exits with status 3.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cmd = match (args.cmd, args.command) {
        (Some(a), Some(b)) if a != b => {
            commands::report_error(&commands::Failure::usage("conflicting commands"));
            return ExitCode::from(2);
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => {
            commands::report_error(&commands::Failure::usage("no command given"));
            return ExitCode::from(2);
        }
    };
    if let Some(n) = std::env::var("GRUNSKYKIT_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|n| *n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match commands::run(cmd, &args) {
        Ok(outcome) => {
            if outcome.tolerance_failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                commands::report_tolerance(&outcome.tolerance_failures);
                ExitCode::from(3)
            }
        }
        Err(f) => {
            commands::report_error(&f);
            ExitCode::from(2)
        }
    }
}
