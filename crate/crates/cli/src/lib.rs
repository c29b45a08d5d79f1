//! `liepair`: load a Lie pair model file and run verification suites over
//! it, producing a deterministic pass/fail report.

pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use liepair_core::liepair::json::parse_model;
use liepair_core::Model;

pub use report::{Record, Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Model axioms.
    Check,
    /// Both Atiyah cocycles and their cocycle conditions.
    Atiyah,
    /// Projection of the dg cocycle against the pair cocycle.
    Compare,
    /// Supertrace identity, Todd cocycles, class-level comparison on point charts.
    Todd,
    /// Contraction axioms and perturbed closed forms.
    HplVerify,
    /// Chevalley–Eilenberg cohomology dimensions on point charts.
    Cohomology,
    /// Every suite above.
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Atiyah => "atiyah",
            Command::Compare => "compare",
            Command::Todd => "todd",
            Command::HplVerify => "hpl-verify",
            Command::Cohomology => "cohomology",
            Command::Report => "report",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Gamma {
    /// All Christoffel symbols zero.
    Default,
    /// Seeded random admissible table.
    Random,
}

#[derive(Parser, Debug)]
#[command(name = "liepair", version, about = "Exact verification of Atiyah and Todd classes of Lie pairs")]
pub struct Cli {
    pub command: Command,
    /// Model file (JSON).
    pub model: PathBuf,
    /// Emit the report as JSON.
    #[arg(long)]
    pub json: bool,
    #[arg(long, value_enum, default_value = "default")]
    pub gamma: Gamma,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Top form degree for Todd and exterior powers; defaults to r (Todd)
    /// and 3 (exterior contractions).
    #[arg(long)]
    pub max_k: Option<usize>,
    /// Attach wall-clock timings to records.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub gamma: Gamma,
    pub seed: u64,
    pub max_k: Option<usize>,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { gamma: Gamma::Default, seed: 0, max_k: None, timing: false }
    }
}

/// Errors that end in exit status 2.
#[derive(Debug, thiserror::Error)]
pub enum UsageError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Model(liepair_core::Error),
    #[error("{0}")]
    Usage(String),
}

pub fn load_model(path: &PathBuf) -> Result<Model, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|source| UsageError::Io { path: path.display().to_string(), source })?;
    parse_model(&text).map_err(UsageError::Model)
}

/// Run one command on a parsed model.
pub fn run(command: Command, model: &Model, opts: &Options) -> Result<Report, UsageError> {
    let records = commands::dispatch(command, model, opts)?;
    Ok(Report {
        command: command.name().into(),
        model: model.name.clone(),
        gamma: match opts.gamma {
            Gamma::Default => "default".into(),
            Gamma::Random => "random".into(),
        },
        seed: opts.seed,
        records,
    })
}

/// Full CLI entry point: returns the exit status and what to print on
/// stdout and stderr.
pub fn main_with_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 { (0, e.to_string(), String::new()) } else { (2, String::new(), e.to_string()) };
        }
    };
    let model = match load_model(&cli.model) {
        Ok(m) => m,
        Err(e) => return (2, String::new(), format!("error: {}\n", e)),
    };
    let opts = Options { gamma: cli.gamma, seed: cli.seed, max_k: cli.max_k, timing: cli.timing };
    match run(cli.command, &model, &opts) {
        Ok(rep) => {
            let out = if cli.json { rep.to_json() + "\n" } else { rep.to_text() };
            (if rep.ok() { 0 } else { 1 }, out, String::new())
        }
        Err(e) => (2, String::new(), format!("error: {}\n", e)),
    }
}
