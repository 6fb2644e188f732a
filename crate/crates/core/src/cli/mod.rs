//! Command-line front end.
//!
//! Exit codes: 0 every verdict holds, 1 usage, parse, I/O or hypothesis
//! error, 2 some verdict violated, 3 some verdict inconclusive and none
//! violated, 4 `search` found a witness.

mod commands;
pub mod config;
pub mod record;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::checks::{ProofStep, Relaxation, SHARPNESS_DELTA};
use crate::models::FunctionClass;
use config::Theorem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Holds = 0,
    Error = 1,
    Violated = 2,
    Inconclusive = 3,
    Witness = 4,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn from_summary(s: &record::Summary) -> Self {
        if s.violated > 0 {
            Exit::Violated
        } else if s.inconclusive > 0 {
            Exit::Inconclusive
        } else {
            Exit::Holds
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Parser)]
#[command(name = "bohrlab", version, about = "Numerical checks of operator-valued Bohr inequalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate seeded function files with embedded hypothesis reports.
    Gen(GenArgs),
    /// Dump the Taylor coefficients of a function file.
    Coeffs(CoeffsArgs),
    /// Check a Bohr-type inequality on function files at given radii.
    Verify(VerifyArgs),
    /// Validate individual intermediate inequalities.
    Proofcheck(ProofcheckArgs),
    /// Compare guaranteed and bisected Bohr radii.
    Radius(RadiusArgs),
    /// Sharpness table for the scalar Möbius witnesses.
    Sharpness(SharpnessArgs),
    /// Search for violations once one hypothesis is dropped.
    Search(SearchArgs),
    /// Aggregate run records.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub class: Option<FunctionClass>,
    /// Dimensions; `count` instances are written for each.
    #[arg(long, value_delimiter = ',')]
    pub dim: Vec<usize>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Admit unimodular Möbius parameters and skip certification.
    #[arg(long)]
    pub relax: bool,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    pub file: PathBuf,
    /// Highest coefficient index.
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long)]
    pub relax: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[arg(long)]
    pub theorem: Option<Theorem>,
    /// Radius, repeatable, or one of the grids guaranteed, cor2, tenths.
    #[arg(long = "r", allow_negative_numbers = true)]
    pub radii: Vec<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// For thm1 and cor1, report failed hypotheses as warnings and check anyway.
    #[arg(long)]
    pub relax: bool,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Record wall time, which makes the output differ between runs.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct ProofcheckArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Steps to validate; defaults to every step of the file's class.
    #[arg(long, value_delimiter = ',')]
    pub steps: Vec<ProofStep>,
    /// Truncation orders for eq9 and eq10.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    /// Radius for the series steps, repeatable.
    #[arg(long = "r", allow_negative_numbers = true)]
    pub radii: Vec<String>,
    /// Number of sample points for eq5 and eq1.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Bracket width of the bisection, at least 1e-6.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub relax: bool,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct SharpnessArgs {
    /// `start:end:count` or a comma-separated list, inside [0.5, 0.999].
    #[arg(long, default_value = "0.5,0.6,0.75,0.9,0.99")]
    pub lambdas: String,
    #[arg(long, default_value_t = SHARPNESS_DELTA)]
    pub delta: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub relaxation: Relaxation,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub budget: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Required by weak_norm_bound.
    #[arg(long)]
    pub relax: bool,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Witness path; defaults to `witness_<relaxation>_s<seed>.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Exit::Error.code() } else { Exit::Holds.code() };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Coeffs(a) => commands::coeffs(a),
        Command::Verify(a) => commands::verify(a),
        Command::Proofcheck(a) => commands::proofcheck(a),
        Command::Radius(a) => commands::radius(a),
        Command::Sharpness(a) => commands::sharpness(a),
        Command::Search(a) => commands::search(a),
        Command::Report(a) => commands::report(a),
    };
    match result {
        Ok(exit) => exit.code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            Exit::Error.code()
        }
    }
}
