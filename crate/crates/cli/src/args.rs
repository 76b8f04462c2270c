use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use umbra_core::oracles::Suite;
use umbra_core::{Construction, UmbraKind};

use crate::grid::RangeSpec;
use crate::report::Format;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "umbra", version, about = "Evaluate and verify nonlinear moments of the Bernoulli and Euler umbrae")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Evaluate a closed form at one or more points.
    Eval(EvalArgs),
    /// Run the identity checks against the numerical oracles.
    Verify(VerifyArgs),
    /// Tabulate a closed form over a grid (CSV by default).
    Table(EvalArgs),
    /// Draw raw samples of L_B or L_E.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UmbraArg {
    #[value(alias = "b")]
    Bernoulli,
    #[value(alias = "e")]
    Euler,
}

impl From<UmbraArg> for UmbraKind {
    fn from(u: UmbraArg) -> Self {
        match u {
            UmbraArg::Bernoulli => UmbraKind::Bernoulli,
            UmbraArg::Euler => UmbraKind::Euler,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Moments,
    Log,
    Inverse,
    Logsine,
    Pochhammer,
    Integrals,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Moments => Suite::Moments,
            SuiteArg::Log => Suite::Log,
            SuiteArg::Inverse => Suite::Inverse,
            SuiteArg::Logsine => Suite::LogSine,
            SuiteArg::Pochhammer => Suite::Pochhammer,
            SuiteArg::Integrals => Suite::Integrals,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    UniformLogit,
    ExponentialRatio,
    CauchyLog,
    GaussianLogRatio,
}

impl From<ConstructionArg> for Construction {
    fn from(c: ConstructionArg) -> Self {
        match c {
            ConstructionArg::UniformLogit => Construction::UniformLogit,
            ConstructionArg::ExponentialRatio => Construction::ExponentialRatio,
            ConstructionArg::CauchyLog => Construction::CauchyLog,
            ConstructionArg::GaussianLogRatio => Construction::GaussianLogRatio,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Add wall-clock time to the report (makes it non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub umbra: Option<UmbraArg>,
    /// log, invpow, power, pochhammer, logsin, logcosh, or a suffixed alias
    /// such as logB, invpowE, pochB.
    #[arg(long)]
    pub func: String,
    /// Evaluation points, comma separated or repeated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<f64>,
    /// Inclusive grid start:stop:step.
    #[arg(long = "x-range", allow_hyphen_values = true)]
    pub x_range: Vec<RangeSpec>,
    /// Order of the inverse power.
    #[arg(long)]
    pub k: Option<u32>,
    /// Order of the power or rising factorial.
    #[arg(long)]
    pub n: Option<u32>,
    /// Also compute the quadrature oracle for each point.
    #[arg(long)]
    pub check: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, env = "UMBRA_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Draws per Monte Carlo check.
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum, default_value = "bernoulli")]
    pub umbra: UmbraArg,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, env = "UMBRA_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub construction: Option<ConstructionArg>,
    #[command(flatten)]
    pub output: OutputArgs,
}
