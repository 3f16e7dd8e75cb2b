use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use qsheet_core::ou::{PathEvent, PathFunctional};

use crate::defaults as d;

#[derive(Parser, Debug)]
#[command(
    name = "qsheet",
    version,
    about = "Brownian sheet and Ornstein-Uhlenbeck path-space experiments",
    propagate_version = true
)]
pub struct Cli {
    /// Master seed; every replica stream is derived from it.
    #[arg(long, global = true, env = "QSHEET_SEED", default_value_t = d::SEED)]
    pub seed: u64,
    /// Worker threads (0 uses every core). Never changes the output.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also render the main table as an SVG plot.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    /// Evaluate the acceptance band for this run; exit 3 on violation.
    #[arg(long, global = true)]
    pub check: bool,
    /// key=value file with defaults for this subcommand (flags override it).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample one Brownian sheet on a grid (`--check` runs the covariance probes).
    Simulate(SimulateArgs),
    /// Law-of-the-iterated-logarithm profile over geometric time levels.
    Lil(LilArgs),
    /// Lower and upper block events of the LIL proof.
    LilBlocks(LilBlocksArgs),
    /// Uniform (Levy) modulus of continuity in t across the s grid.
    Modulus(ModulusArgs),
    /// Chung modulus of nondifferentiability.
    Chung(ChungArgs),
    /// Nowhere-differentiability statistic as the window shrinks.
    Nodiff(NodiffArgs),
    /// Quadratic variation along dyadic partitions.
    Qv(QvArgs),
    /// Erdos and Mountford integral tests for phi_alpha.
    Upperclass(UpperclassArgs),
    /// Killed-hitting capacity estimate of a path event.
    Capacity(CapacityArgs),
    /// Strong Markov property at the first exit time of a sup-norm ball.
    Markov(MarkovArgs),
    /// Reflection-principle inequality for the path-space sup-norm.
    Reflect(ReflectArgs),
    /// Mehler semigroup estimates and the symmetry check.
    Mehler(MehlerArgs),
    /// Point-hitting probabilities of a d-dimensional sheet.
    Hit(HitArgs),
    /// Fitted hitting slopes over several dimensions.
    Hitscale(HitscaleArgs),
    /// Box-counting proxy for the volume of the range.
    Rangevol(RangevolArgs),
    /// Fourier integrand of the sojourn measure.
    Sojourn(SojournArgs),
    /// Level-component probabilities P{J(r)} and their limit.
    Kendall(KendallArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Simulate(_) => "simulate",
            Command::Lil(_) => "lil",
            Command::LilBlocks(_) => "lil-blocks",
            Command::Modulus(_) => "modulus",
            Command::Chung(_) => "chung",
            Command::Nodiff(_) => "nodiff",
            Command::Qv(_) => "qv",
            Command::Upperclass(_) => "upperclass",
            Command::Capacity(_) => "capacity",
            Command::Markov(_) => "markov",
            Command::Reflect(_) => "reflect",
            Command::Mehler(_) => "mehler",
            Command::Hit(_) => "hit",
            Command::Hitscale(_) => "hitscale",
            Command::Rangevol(_) => "rangevol",
            Command::Sojourn(_) => "sojourn",
            Command::Kendall(_) => "kendall",
        }
    }
}

/// Reals, also written as `2^-k` or `2^k`.
pub fn parse_real(text: &str) -> Result<f64, String> {
    let text = text.trim();
    if let Some((base, exp)) = text.split_once('^') {
        let b: f64 = base.parse().map_err(|_| format!("bad base in `{text}`"))?;
        let e: i32 = exp.parse().map_err(|_| format!("bad exponent in `{text}`"))?;
        return Ok(b.powi(e));
    }
    text.parse::<f64>().map_err(|_| format!("`{text}` is not a number"))
}

fn parse_event(text: &str) -> Result<PathEvent, String> {
    PathEvent::parse(text).map_err(|e| e.to_string())
}

fn parse_functional(text: &str) -> Result<PathFunctional, String> {
    PathFunctional::parse(text).map_err(|e| e.to_string())
}

/// A colon-separated pair such as `1:0.5`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pair(pub f64, pub f64);

impl FromStr for Pair {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected `a:b`, got `{s}`"))?;
        Ok(Pair(parse_real(a)?, parse_real(b)?))
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.0, self.1)
    }
}

pub fn pairs(list: &str) -> Vec<Pair> {
    list.split(',')
        .map(|p| p.parse().expect("built-in pair list"))
        .collect()
}

/// Initial path for the Mehler experiments.
#[derive(clap::ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartPath {
    /// `x(t) = sin t`
    Sin,
    /// `x(t) = t`
    Linear,
    /// `x = 0`
    Zero,
}

/// Which field the Chung statistic is computed on.
#[derive(clap::ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChungField {
    /// Stationary OU sheet rows, already standard Brownian in t.
    Ou,
    /// Brownian sheet rows on [1, e], divided by sqrt(s).
    Sheet,
}

#[derive(Args, Debug, Clone)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 0.0, value_parser = parse_real)]
    pub s_min: f64,
    #[arg(long, default_value_t = 1.0, value_parser = parse_real)]
    pub s_max: f64,
    #[arg(long, default_value_t = 0.0, value_parser = parse_real)]
    pub t_min: f64,
    #[arg(long, default_value_t = 1.0, value_parser = parse_real)]
    pub t_max: f64,
    #[arg(long, default_value_t = d::SIM_S_STEPS)]
    pub s_steps: usize,
    #[arg(long, default_value_t = d::SIM_T_STEPS)]
    pub t_steps: usize,
    /// Replicas for the covariance probes under `--check`.
    #[arg(long, default_value_t = d::COV_REPLICAS)]
    pub replicas: usize,
}

#[derive(Args, Debug, Clone)]
pub struct LilArgs {
    #[arg(long, default_value_t = d::LIL_THETA, value_parser = parse_real)]
    pub theta: f64,
    #[arg(long, default_value_t = d::LIL_N_MIN)]
    pub n_min: i32,
    #[arg(long, default_value_t = d::LIL_N_MAX)]
    pub n_max: i32,
    #[arg(long, default_value_t = d::LIL_S_STEPS)]
    pub s_steps: usize,
}

#[derive(Args, Debug, Clone)]
pub struct LilBlocksArgs {
    #[command(flatten)]
    pub lil: LilArgs,
    #[arg(long, default_value_t = d::BLOCK_C_LOWER, value_parser = parse_real)]
    pub c: f64,
    #[arg(long, default_value_t = d::BLOCK_EPS, value_parser = parse_real)]
    pub eps: f64,
}

#[derive(Args, Debug, Clone)]
pub struct ModulusArgs {
    #[arg(long, value_delimiter = ',', value_parser = parse_real,
          default_values_t = d::MODULUS_EPS_POW.map(|k| 2f64.powi(-k)))]
    pub eps: Vec<f64>,
    #[arg(long, default_value_t = d::MODULUS_S_STEPS)]
    pub s_steps: usize,
    #[arg(long, default_value_t = d::MODULUS_T_STEPS)]
    pub t_steps: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ChungArgs {
    #[arg(long, default_value_t = 2f64.powi(-d::CHUNG_EPS_POW), value_parser = parse_real)]
    pub eps: f64,
    /// Start points t range over [0, t-span].
    #[arg(long, default_value_t = d::CHUNG_T_SPAN, value_parser = parse_real)]
    pub t_span: f64,
    /// Intervals per unit of t; the grid is extended past t-span by eps.
    #[arg(long, default_value_t = d::CHUNG_T_STEPS)]
    pub t_steps: usize,
    #[arg(long, default_value_t = d::CHUNG_S_STEPS)]
    pub s_steps: usize,
    /// OU time horizon (only for `--field ou`).
    #[arg(long, default_value_t = d::CHUNG_S_MAX, value_parser = parse_real)]
    pub s_max: f64,
    #[arg(long, value_enum, default_value_t = ChungField::Ou)]
    pub field: ChungField,
}

#[derive(Args, Debug, Clone)]
pub struct NodiffArgs {
    #[arg(long, value_delimiter = ',', default_values_t = d::NODIFF_LEVELS)]
    pub levels: Vec<usize>,
    #[arg(long, default_value_t = d::NODIFF_S_STEPS)]
    pub s_steps: usize,
    #[arg(long, default_value_t = d::NODIFF_T_STEPS)]
    pub t_steps: usize,
    #[arg(long, default_value_t = d::NODIFF_T_SPAN, value_parser = parse_real)]
    pub t_span: f64,
    /// Replace the sheet by the control field W(s, t) = t.
    #[arg(long)]
    pub linear: bool,
}

#[derive(Args, Debug, Clone)]
pub struct QvArgs {
    /// Dyadic depth k; the partition has 2^k intervals.
    #[arg(long, default_value_t = d::QV_DEPTH)]
    pub depth: u32,
    #[arg(long, default_value_t = d::QV_T, value_parser = parse_real)]
    pub t: f64,
    #[arg(long, default_value_t = d::QV_S_STEPS)]
    pub s_steps: usize,
}

#[derive(Args, Debug, Clone)]
pub struct UpperclassArgs {
    #[arg(long, value_delimiter = ',', value_parser = parse_real, default_values_t = d::UPPER_ALPHAS)]
    pub alpha: Vec<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct CapacityArgs {
    /// everything | nothing | zero-crossing:T | sup-exceeds:L | modulus:EPS:C
    #[arg(long, default_value = d::CAP_EVENT, value_parser = parse_event)]
    pub event: PathEvent,
    #[arg(long, default_value_t = d::CAP_HORIZON, value_parser = parse_real)]
    pub horizon: f64,
    #[arg(long, default_value_t = d::CAP_S_STEPS)]
    pub s_steps: usize,
    #[arg(long, default_value_t = d::CAP_T_STEPS)]
    pub t_steps: usize,
    #[arg(long, default_value_t = d::CAP_REPLICAS)]
    pub replicas: usize,
}

#[derive(Args, Debug, Clone)]
pub struct MarkovArgs {
    #[arg(long, default_value_t = d::MARKOV_LAMBDA, value_parser = parse_real)]
    pub lambda: f64,
    /// Post-stopping lags as s:t pairs.
    #[arg(long, value_delimiter = ',', default_values_t = pairs(d::MARKOV_LAGS))]
    pub lags: Vec<Pair>,
    #[arg(long, default_value_t = d::MARKOV_DS, value_parser = parse_real)]
    pub ds: f64,
    #[arg(long, default_value_t = d::MARKOV_T_STEPS)]
    pub t_steps: usize,
    #[arg(long, default_value_t = d::MARKOV_HORIZON, value_parser = parse_real)]
    pub horizon: f64,
    #[arg(long, default_value_t = d::MARKOV_REPLICAS)]
    pub replicas: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ReflectArgs {
    /// (T, lambda) pairs written T:lambda.
    #[arg(long, value_delimiter = ',', default_values_t = pairs(d::REFLECT_POINTS))]
    pub points: Vec<Pair>,
    #[arg(long, default_value_t = d::REFLECT_S_STEPS)]
    pub s_steps: usize,
    #[arg(long, default_value_t = d::REFLECT_T_STEPS)]
    pub t_steps: usize,
    #[arg(long, default_value_t = d::REFLECT_REPLICAS)]
    pub replicas: usize,
}

#[derive(Args, Debug, Clone)]
pub struct MehlerArgs {
    /// eval:T | square-eval:T | sup | integral | sign-zero:T
    #[arg(long, default_value = "eval:1", value_parser = parse_functional)]
    pub f: PathFunctional,
    /// Run the symmetry check <g, T_s f> = <T_s g, f> against this functional.
    #[arg(long, value_parser = parse_functional)]
    pub g: Option<PathFunctional>,
    #[arg(long, value_delimiter = ',', value_parser = parse_real, default_values_t = d::MEHLER_S)]
    pub s: Vec<f64>,
    #[arg(long, value_enum, default_value_t = StartPath::Sin)]
    pub x: StartPath,
    #[arg(long, default_value_t = d::MEHLER_X_STEPS)]
    pub t_steps: usize,
    #[arg(long, default_value_t = d::MEHLER_REPLICAS)]
    pub replicas: usize,
}

#[derive(Args, Debug, Clone)]
pub struct HitArgs {
    #[arg(long, default_value_t = d::HIT_DIM)]
    pub dim: usize,
    #[arg(long, value_delimiter = ',', value_parser = parse_real, default_values_t = d::HIT_EPS)]
    pub eps: Vec<f64>,
    /// Target point (defaults to the origin).
    #[arg(long, value_delimiter = ',', value_parser = parse_real)]
    pub x: Option<Vec<f64>>,
    #[arg(long, default_value_t = d::HIT_GRID)]
    pub grid_steps: usize,
    #[arg(long, default_value_t = d::HIT_REPLICAS)]
    pub replicas: usize,
    /// Use the Euclidean ball instead of the sup-norm ball.
    #[arg(long)]
    pub l2: bool,
}

#[derive(Args, Debug, Clone)]
pub struct HitscaleArgs {
    #[arg(long, value_delimiter = ',', default_values_t = d::HITSCALE_DIMS)]
    pub dims: Vec<usize>,
    #[arg(long, value_delimiter = ',', value_parser = parse_real, default_values_t = d::HIT_EPS)]
    pub eps: Vec<f64>,
    #[arg(long, default_value_t = d::HIT_GRID)]
    pub grid_steps: usize,
    #[arg(long, default_value_t = d::HIT_REPLICAS)]
    pub replicas: usize,
}

#[derive(Args, Debug, Clone)]
pub struct RangevolArgs {
    #[arg(long, default_value_t = d::RANGE_DIM)]
    pub dim: usize,
    #[arg(long, value_delimiter = ',', value_parser = parse_real, default_values_t = d::RANGE_BOXES)]
    pub box_side: Vec<f64>,
    #[arg(long, default_value_t = d::RANGE_GRID)]
    pub grid_steps: usize,
    #[arg(long, default_value_t = d::RANGE_REPLICAS)]
    pub replicas: usize,
}

#[derive(Args, Debug, Clone)]
pub struct SojournArgs {
    #[arg(long, default_value_t = d::SOJOURN_DIM)]
    pub dim: usize,
    /// Magnitudes |xi|.
    #[arg(long, value_delimiter = ',', value_parser = parse_real, default_values_t = d::SOJOURN_XI)]
    pub xi: Vec<f64>,
    /// Add Monte Carlo estimates of E|sigma_hat(xi)|^2 (xi along the first axis).
    #[arg(long)]
    pub mc: bool,
    #[arg(long, default_value_t = d::SOJOURN_S_MAX, value_parser = parse_real)]
    pub s_max: f64,
    #[arg(long, default_value_t = d::SOJOURN_GRID)]
    pub grid_steps: usize,
    #[arg(long, default_value_t = d::SOJOURN_REPLICAS)]
    pub replicas: usize,
}

#[derive(Args, Debug, Clone)]
pub struct KendallArgs {
    #[arg(long, value_delimiter = ',', value_parser = parse_real, default_values_t = d::KENDALL_R)]
    pub r: Vec<f64>,
    /// Boundary points per side of the square.
    #[arg(long, default_value_t = d::KENDALL_BOUNDARY)]
    pub boundary_steps: usize,
    /// Lattice intervals over [0, 2].
    #[arg(long, default_value_t = d::KENDALL_LATTICE)]
    pub lattice_steps: usize,
    #[arg(long, default_value_t = d::KENDALL_LIMIT_STEPS)]
    pub limit_steps: usize,
    #[arg(long, default_value_t = d::KENDALL_REPLICAS)]
    pub replicas: usize,
}
