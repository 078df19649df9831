use std::path::PathBuf;

use bivrel::reconstruction::Component;
use bivrel::{Direction, ReliabilityKind};
use clap::{Parser, Subcommand, ValueEnum};

/// Bivariate quantile curves and quantile-based reliability functions.
///
/// Exit codes: 0 success, 1 verification or numerical failure, 2 usage
/// error, 3 I/O or model-specification error.
#[derive(Debug, Parser)]
#[command(name = "bivrel", version)]
pub struct Cli {
    /// Model specification (JSON with marginal_x, marginal_y, copula).
    #[arg(long, global = true, value_name = "PATH")]
    pub model: Option<PathBuf>,

    /// Output file; standard output when absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// JSON file with a "numerics" object overriding numeric defaults.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Level-p quantile curve in one direction.
    Curve(CurveArgs),
    /// Reliability vectors on a (u, p) grid.
    Field(FieldArgs),
    /// Quantile function recovered from a reliability function.
    Reconstruct(ReconstructArgs),
    /// All round trips and the hazard / mean residual life identity.
    Verify(VerifyArgs),
    /// Seeded sample from the model as "x,y" rows.
    Sample(SampleArgs),
}

#[derive(Debug, clap::Args)]
pub struct CurveArgs {
    /// Probability level in (0,1).
    #[arg(short = 'p', long = "level", allow_negative_numbers = true)]
    pub p: f64,

    /// One of --, +-, -+, ++ (first sign for X, second for Y).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_direction)]
    pub dir: Direction,

    /// Number of curve points.
    #[arg(short = 'n', long = "points", default_value_t = 200)]
    pub n: usize,

    /// Also write an SVG plot of the curve.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,

    /// Estimate the curve from an "x,y" sample file instead of the model.
    #[arg(long, value_name = "PATH")]
    pub sample: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct FieldArgs {
    /// One of hazard, mrl, rev-hazard, rev-mrl.
    #[arg(long, value_parser = parse_kind)]
    pub kind: ReliabilityKind,

    /// Interior grid size per axis: levels i / (grid + 1).
    #[arg(long, default_value_t = 33)]
    pub grid: usize,

    /// Exchange the roles of X and Y.
    #[arg(long)]
    pub interchanged: bool,
}

#[derive(Debug, clap::Args)]
pub struct ReconstructArgs {
    /// One of hazard, mrl, rev-hazard, rev-mrl.
    #[arg(long, value_parser = parse_kind)]
    pub kind: ReliabilityKind,

    /// first (built on Q_X) or second (built on phi); 1 and 2 also work.
    #[arg(long, value_parser = parse_component, default_value = "first")]
    pub component: Component,

    /// Conditioning level of the second component.
    #[arg(long, default_value_t = 0.5)]
    pub anchor: f64,

    /// Number of evaluation points.
    #[arg(long, default_value_t = 20)]
    pub grid: usize,

    /// First evaluation point (default 0.01, or 0.05 for reversed kinds).
    #[arg(long)]
    pub from: Option<f64>,

    /// Last evaluation point (default 0.95, or 0.99 for reversed kinds).
    #[arg(long)]
    pub to: Option<f64>,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    /// Conditioning level of the second component.
    #[arg(long, default_value_t = 0.5)]
    pub anchor: f64,
}

#[derive(Debug, clap::Args)]
pub struct SampleArgs {
    /// Sample size.
    #[arg(long)]
    pub n: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn parse_direction(s: &str) -> Result<Direction, String> {
    s.parse().map_err(|e: bivrel::Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<ReliabilityKind, String> {
    s.parse().map_err(|e: bivrel::Error| e.to_string())
}

fn parse_component(s: &str) -> Result<Component, String> {
    s.parse().map_err(|e: bivrel::Error| e.to_string())
}
