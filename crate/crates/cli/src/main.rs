use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod cache;
mod commands;
mod output;

use commands::{BoundsArgs, CertifyArgs, ClassesArgs, CoversArgs, PipelineArgs, StatsArgs};

/// Spectral-gap certificates for covers of the Bolza surface and tools for
/// the random-cover switching model.
#[derive(Parser, Debug)]
#[command(name = "gapcert", version, about)]
struct Cli {
    /// Working precision in bits for interval arithmetic.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    /// Master seed for random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify a spectral gap for the genus-17 cover.
    Certify(CertifyArgs),
    /// List conjugacy classes of the (2,3,8) triangle group.
    Classes(ClassesArgs),
    /// Sample random permutation covers and screen short geodesics.
    Covers(CoversArgs),
    /// Cycle statistics of word images in random permutations.
    Stats(StatsArgs),
    /// Bound calculators and the constants ledger.
    Bounds(BoundsArgs),
    /// Sample a cover, build its Schreier data and walk the two-cover hypercube.
    Pipeline(PipelineArgs),
}

#[derive(Serialize)]
pub struct Globals {
    pub precision: u32,
    pub seed: u64,
}

/// Exit status of a completed run.
pub enum Outcome {
    Success,
    Inconclusive,
}

#[derive(Debug)]
pub enum CliError {
    Core(gapcert_core::error::Error),
    Input(String),
    Io(std::io::Error),
}

impl From<gapcert_core::error::Error> for CliError {
    fn from(e: gapcert_core::error::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn kind_and_code(&self) -> (&'static str, u8) {
        use gapcert_core::error::Error as E;
        match self {
            CliError::Input(_) => ("input", 3),
            CliError::Io(_) => ("io", 1),
            CliError::Core(e) => match e {
                E::InvalidWord(_)
                | E::IndexOutOfRange { .. }
                | E::LengthMismatch { .. }
                | E::NonPositive(_)
                | E::OutOfRange(_)
                | E::Parse { .. }
                | E::IncompleteInput(_)
                | E::Infeasible(_) => ("input", 3),
                E::EnumerationLimit { .. }
                | E::PrecisionFail(_)
                | E::IncompleteEnumeration(_)
                | E::NotTransitive => ("resource_limit", 4),
                E::CharFail(_) | E::VerificationFailed(_) | E::ClassMismatch(_) => ("internal", 1),
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Input(s) => s.clone(),
            CliError::Io(e) => e.to_string(),
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Input("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Input(e.to_string()))?;
    }
    let g = Globals {
        precision: cli.precision,
        seed: cli.seed,
    };
    if !(32..=4096).contains(&g.precision) {
        return Err(CliError::Input("--precision must lie in 32..=4096".into()));
    }
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Certify(a) => commands::certify(&g, a, cli.format, out),
        Command::Classes(a) => commands::classes(&g, a, cli.format, out),
        Command::Covers(a) => commands::covers(&g, a, cli.format, out),
        Command::Stats(a) => commands::stats(&g, a, cli.format, out),
        Command::Bounds(a) => commands::bounds(&g, a, cli.format, out),
        Command::Pipeline(a) => commands::pipeline(&g, a, cli.format, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Inconclusive) => ExitCode::from(2),
        Err(e) => {
            let (kind, code) = e.kind_and_code();
            let report = serde_json::json!({
                "error": { "kind": kind, "message": e.message(), "exit_code": code }
            });
            eprintln!("{report}");
            ExitCode::from(code)
        }
    }
}
