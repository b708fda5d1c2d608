use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Band gaps of 1D phononic crystals, Sobol' sensitivity studies and
/// reduced-order design equations.
#[derive(Debug, Parser)]
#[command(name = "phonon-sobol", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Seed for every random design; recorded in all outputs.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Worker threads for batch evaluation (1 runs sequentially). Never
    /// changes results.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Output directory [default: $PHONON_SOBOL_OUT, else the current directory].
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Format of tabular outputs. Summaries are always JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolarizationArg {
    S,
    P,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the dispersion relation of a unit cell.
    Dispersion(DispersionArgs),
    /// First band gap of a unit cell.
    Bandgap(BandgapArgs),
    /// Sobol' indices and Sobol' functions of an objective.
    Sobol(SobolArgs),
    /// Evaluate or validate the reduced-order design equations.
    Design(DesignArgs),
}

#[derive(Debug, Args)]
pub struct CellSource {
    /// Unit-cell JSON file: {"layers": [{"h", "rho", "e", "nu"}, ...]}.
    #[arg(long, conflicts_with = "params")]
    pub cell: Option<PathBuf>,

    /// Two-layer cell as E2/E1,rho2/rho1,h2/h1,nu1,nu2.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub params: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct DispersionArgs {
    #[command(flatten)]
    pub source: CellSource,

    #[arg(long, value_enum, default_value_t = PolarizationArg::Both)]
    pub polarization: PolarizationArg,

    /// Largest dimensionless radial frequency sampled.
    #[arg(long, default_value_t = 20.0)]
    pub omega_max: f64,

    #[arg(long, default_value_t = 2000)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct BandgapArgs {
    #[command(flatten)]
    pub source: CellSource,

    #[arg(long, value_enum, default_value_t = PolarizationArg::Both)]
    pub polarization: PolarizationArg,
}

#[derive(Debug, Args)]
pub struct SobolArgs {
    /// `poly`, one of SS/WS/SP/WP, or `all` for the four gap objectives.
    #[arg(long, default_value = "poly")]
    pub target: String,

    /// Paired Latin Hypercube samples.
    #[arg(long, short = 'n', default_value_t = 2000)]
    pub samples: usize,

    /// Parameter-space JSON replacing the canonical phononic space.
    #[arg(long)]
    pub space: Option<PathBuf>,

    /// Skip second-order indices.
    #[arg(long)]
    pub first_only: bool,

    /// Sobol' functions to estimate, as 1-based axes: `2` or `2:3`.
    #[arg(long = "function", value_delimiter = ',')]
    pub functions: Vec<String>,

    #[arg(long, default_value_t = 64)]
    pub grid: usize,

    #[arg(long, default_value_t = 128)]
    pub inner: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DesignMode {
    Eval,
    Error,
    Truncation,
}

#[derive(Debug, Args)]
pub struct DesignArgs {
    /// One of SS/WS/SP/WP, or `all`.
    #[arg(long, default_value = "all")]
    pub kind: String,

    #[arg(long, value_enum, default_value_t = DesignMode::Eval)]
    pub mode: DesignMode,

    /// Evaluation point E2/E1,rho2/rho1,h2/h1,nu1,nu2; repeat for several.
    #[arg(long = "params", value_delimiter = ',', allow_negative_numbers = true, action = clap::ArgAction::Append)]
    pub params: Vec<f64>,

    /// Samples for error and truncation modes.
    #[arg(long, short = 'n', default_value_t = 2000)]
    pub samples: usize,
}
