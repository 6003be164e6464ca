//! Command-line front end for the `kcenter` library.
//!
//! Exit codes: 0 on success, 2 for invalid input, 3 when an instance is too
//! large for the exact solver, 1 for anything else (I/O failures).

pub mod commands;
pub mod manifest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub use commands::execute;
pub use manifest::RunManifest;

/// Master seed used when neither `--seed` nor `--entropy` is given.
pub const DEFAULT_SEED: u64 = 0x006b_6365_6e74_6572;

#[derive(Debug, Parser)]
#[command(
    name = "kcenter",
    version,
    about = "Node-placement k-center heuristics and campaigns"
)]
pub struct Cli {
    /// Master seed for every random choice.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Draw the master seed from the OS instead of the fixed default.
    #[arg(long, global = true, conflicts_with = "seed")]
    pub entropy: bool,

    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Output file (solve, exact, dump-geometry) or directory (campaigns).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Solve an instance file with one heuristic.
    Solve(SolveArgs),
    /// Solve an instance file optimally by enumeration.
    Exact(ExactArgs),
    /// Mean ΔD of challengers against a challenged solver on random instances.
    Average(AverageArgs),
    /// Evolve instances on which challengers beat the challenged solver.
    Adversary(AdversaryArgs),
    /// Adversarial search for every ordered pair of solvers.
    Matrix(MatrixArgs),
    /// Plot-ready CSV of customers, centers and assignment segments.
    DumpGeometry(DumpGeometryArgs),
    /// Re-run a campaign from its manifest.
    Replay(ReplayArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve(_) => "solve",
            Command::Exact(_) => "exact",
            Command::Average(_) => "average",
            Command::Adversary(_) => "adversary",
            Command::Matrix(_) => "matrix",
            Command::DumpGeometry(_) => "dump-geometry",
            Command::Replay(_) => "replay",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SolverArgs {
    #[arg(long, default_value_t = kcenter::solvers::DEFAULT_BACKTRACK_MAX_STEPS)]
    pub backtrack_max_steps: usize,

    #[arg(long, default_value_t = kcenter::solvers::DEFAULT_MACQUEEN_MAX_ITERS)]
    pub macqueen_max_iters: usize,

    /// Start 2-Approx from a seeded random customer.
    #[arg(long)]
    pub two_approx_random_start: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SolveArgs {
    pub instance: PathBuf,

    #[arg(long, value_parser = parse_kind)]
    pub solver: kcenter::SolverKind,

    #[command(flatten)]
    pub solver_args: SolverArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ExactArgs {
    pub instance: PathBuf,

    /// Largest number of center subsets to enumerate.
    #[arg(long, default_value_t = kcenter::exact::DEFAULT_SUBSET_CAP)]
    pub cap: u128,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct AverageArgs {
    /// Catalog setups by label (I..VI) or customers/centers; all six if
    /// omitted and no custom size is given.
    #[arg(long, value_delimiter = ',')]
    pub setup: Vec<String>,

    /// Custom setup size; requires --centers.
    #[arg(long, requires = "centers")]
    pub customers: Option<usize>,

    #[arg(long, requires = "customers")]
    pub centers: Option<usize>,

    #[arg(long, default_value = "dragoon", value_parser = parse_kind)]
    pub challenged: kcenter::SolverKind,

    #[arg(
        long,
        value_delimiter = ',',
        value_parser = parse_kind,
        default_value = "macqueen,two-approx,greedy,backtrack"
    )]
    pub challengers: Vec<kcenter::SolverKind>,

    #[arg(long, default_value_t = 1000)]
    pub instances: usize,

    #[command(flatten)]
    pub solver_args: SolverArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct EaArgs {
    #[arg(long, default_value_t = kcenter::adversary::EAConfig::DEFAULT_POPULATION)]
    pub population: usize,

    #[arg(long, default_value_t = kcenter::adversary::EAConfig::DEFAULT_GENERATIONS)]
    pub generations: usize,

    #[arg(long, default_value_t = kcenter::adversary::EAConfig::DEFAULT_MUTATION_SIGMA)]
    pub mutation_sigma: f64,

    #[arg(long, default_value_t = kcenter::adversary::EAConfig::DEFAULT_RECOMBINATION_PROB)]
    pub recombination_prob: f64,

    #[arg(long, default_value_t = kcenter::adversary::EAConfig::DEFAULT_RECOMBINATION_ALPHA)]
    pub recombination_alpha: f64,

    #[arg(long, default_value_t = kcenter::adversary::EAConfig::DEFAULT_TOURNAMENT_SIZE)]
    pub tournament_size: usize,

    /// Explicit run seeds; otherwise `--runs` seeds counting up from the
    /// master seed.
    #[arg(long, value_delimiter = ',')]
    pub seeds: Vec<u64>,

    #[arg(long, default_value_t = 1)]
    pub runs: u64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct AdversaryArgs {
    /// Catalog label or customers/centers.
    #[arg(long, default_value = "I")]
    pub setup: String,

    #[arg(long, value_delimiter = ',', value_parser = parse_kind, default_value = "macqueen")]
    pub challengers: Vec<kcenter::SolverKind>,

    #[arg(long, default_value = "dragoon", value_parser = parse_kind)]
    pub challenged: kcenter::SolverKind,

    #[command(flatten)]
    pub ea: EaArgs,

    #[command(flatten)]
    pub solver_args: SolverArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct MatrixArgs {
    #[arg(long, default_value = "V")]
    pub setup: String,

    #[arg(
        long,
        value_delimiter = ',',
        value_parser = parse_kind,
        default_value = "macqueen,backtrack,two-approx,greedy,dragoon"
    )]
    pub kinds: Vec<kcenter::SolverKind>,

    #[command(flatten)]
    pub ea: EaArgs,

    #[command(flatten)]
    pub solver_args: SolverArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct DumpGeometryArgs {
    pub instance: PathBuf,
    /// Output of `solve` or `exact`, or any JSON with a `centers` array.
    pub solution: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
}

fn parse_kind(s: &str) -> Result<kcenter::SolverKind, String> {
    s.parse().map_err(|e: kcenter::Error| e.to_string())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Infeasible(String),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Other(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.into())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Other(e.into())
    }
}

impl From<kcenter::Error> for CliError {
    fn from(e: kcenter::Error) -> Self {
        match e {
            kcenter::Error::TooLargeForExact { .. } => CliError::Infeasible(format!(
                "{e}; raise the limit with --cap if the enumeration is affordable"
            )),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    let argv: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(cli, &argv, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
