use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use nesbitt::extremum::Mode;
use nesbitt::oracle::{Form, Witness};
use nesbitt::{Direction, Exec};

#[derive(Debug, Parser)]
#[command(name = "nesbitt", version, about = "Classify, evaluate, verify and extremize generalized Nesbitt sums")]
pub struct Cli {
    /// Output format [default: json, or the stored one with --config].
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Re-run a stored configuration (the `config` object of an earlier
    /// JSON output, or the whole output).
    #[arg(long)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
}

/// Everything needed to reproduce a run. Files named on the command line
/// are inlined before this is serialized.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum Command {
    /// Certify the power-form and sum-form comparisons for a parameter tuple.
    Classify(ClassifyArgs),
    /// Evaluate both sides at a point.
    Eval(EvalArgs),
    /// Check a direction on random points plus boundary probes.
    Verify(VerifyArgs),
    /// Constrained extremum of a separable kernel sum.
    Extremize(ExtremizeArgs),
    /// Closed-form infimum of S_beta and its thresholds.
    Sbeta(SbetaArgs),
    /// Real Hurwitz-Lerch zeta, weighted sums and their extremal case.
    Zeta(ZetaArgs),
    /// Run the acceptance fixture set.
    Suite(SuiteArgs),
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct ParamArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    /// JSON `{n, m, p, beta, t, r}`; individual flags override its fields.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct PointArgs {
    /// Coordinates as a CSV line or a JSON array.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// File holding one CSV line or a JSON array.
    #[arg(long, conflicts_with = "point")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormArg {
    Power,
    Sum,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Power => Form::Power,
            FormArg::Sum => Form::Sum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionArg {
    Geq,
    Leq,
    Equal,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Geq => Direction::Geq,
            DirectionArg::Leq => Direction::Leq,
            DirectionArg::Equal => Direction::Equal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Min,
    Max,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Min => Mode::Min,
            ModeArg::Max => Mode::Max,
        }
    }
}

pub fn exec(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ClassifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ParamArgs,
    /// Only this comparison; both by default.
    #[arg(long, value_enum)]
    pub form: Option<FormArg>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct EvalArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub point: PointArgs,
    /// Use cyclic window sums of this length instead of single terms.
    #[arg(long)]
    pub window: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = FormArg::Power)]
    pub form: FormArg,
    /// Test this direction instead of the certified one.
    #[arg(long, value_enum)]
    pub direction: Option<DirectionArg>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = nesbitt::oracle::DEFAULT_REL_TOL)]
    pub rel_tol: f64,
    /// Skip the boundary probes.
    #[arg(long)]
    pub no_probes: bool,
    #[arg(long)]
    pub sequential: bool,
    /// Re-evaluate a stored witness instead of sampling.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replay: Option<PathBuf>,
    #[arg(skip)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replay_witness: Option<Witness>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ExtremizeArgs {
    /// A worked example kernel: 3.3, 3.4, 3.5 (needs --beta) or 4.1 (needs
    /// --beta, optional --n). Without it the kernel comes from the params.
    #[arg(long)]
    pub example: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ParamArgs,
    /// Required with explicit params; examples carry their own.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// The power sum the coordinates `a_i^p` add up to.
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub eps_rel: f64,
    #[arg(long, default_value_t = 512)]
    pub grid: usize,
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SbetaArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    /// Also run the simplex grid search (n ≤ 5 recommended).
    #[arg(long)]
    pub brute: bool,
    #[arg(long, default_value_t = 1e-6)]
    pub beta0_tol: f64,
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ZetaArgs {
    #[arg(long)]
    pub z: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    /// Offset `a`, or `a_n` for weighted sums.
    #[arg(long)]
    pub a: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = nesbitt::zeta::DEFAULT_TERM_CAP)]
    pub cap: u64,
    /// Shift for the weighted sum `Σ x_i ζ(z, β, a − r x_i)`.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    /// Infimum of the offset sequence; defaults to `a`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Simplex point for the weighted sum (CSV or JSON array).
    #[arg(long)]
    pub x: Option<String>,
    /// Dimension for the uniform point and the sampled check.
    #[arg(long)]
    pub n: Option<usize>,
    /// Compare the uniform point against this many random simplex points.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SuiteArgs {
    /// Run only these criteria (1-10); all by default.
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub only: Vec<u8>,
    #[arg(long)]
    pub sequential: bool,
}
