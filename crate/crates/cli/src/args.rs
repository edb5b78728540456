use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

/// Exact string counts, generalized clustering and Milgram experiments on
/// undirected graphs.
#[derive(Debug, Parser)]
#[command(name = "netstrings", version)]
pub struct Cli {
    /// Flat `key = value` file; keys are long flag names, flags on the
    /// command line take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph as an edge list.
    #[command(args_override_self = true)]
    Generate(GenerateArgs),
    /// Tabulate S̄_q, Tr R^q, Δ_q, C(q), M_q, X and Y for one graph.
    #[command(args_override_self = true)]
    Metrics(MetricsArgs),
    /// Run a parameter sweep and write trial, aggregate and fit tables.
    #[command(args_override_self = true)]
    Sweep(SweepArgs),
    /// Least-squares fit of the `x`, `y` columns of a CSV file.
    #[command(args_override_self = true)]
    Fit(FitArgs),
    /// Draw an SVG figure from a sweep CSV.
    #[command(args_override_self = true)]
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Shared {
    /// Generator seed (base seed for sweeps).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output file, or directory for `sweep`; standard output when omitted.
    #[arg(long, short, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphModel {
    /// Configuration-model scale-free graph.
    Sf,
    /// Newman–Watts: ring lattice plus shortcuts.
    Nw,
    /// Watts–Strogatz: ring lattice with rewired edges.
    Ws,
    /// Erdős–Rényi G(N, p).
    Er,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepModel {
    Sf,
    Nw,
}

#[derive(Debug, Clone, Args)]
pub struct ModelParams {
    /// Number of nodes.
    #[arg(long, default_value_t = 200)]
    pub n: usize,

    /// Minimum degree of the scale-free model.
    #[arg(long, default_value_t = 2)]
    pub kmin: usize,

    /// Maximum degree of the scale-free model [default: ⌊N^(1/(γ−1))⌋].
    #[arg(long)]
    pub kmax: Option<usize>,

    /// Lattice neighbors on each side for the small-world models.
    #[arg(long, default_value_t = 2)]
    pub kbase: usize,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub shared: Shared,

    #[arg(long, value_enum, default_value_t = GraphModel::Sf)]
    pub model: GraphModel,

    #[command(flatten)]
    pub params: ModelParams,

    /// Power-law exponent.
    #[arg(long, default_value_t = 2.5)]
    pub gamma: f64,

    /// Shortcut (or rewiring) probability per lattice edge.
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,

    /// Edge probability for `er`.
    #[arg(long, default_value_t = 0.05)]
    pub p: f64,
}

#[derive(Debug, Clone, Args)]
pub struct MetricsArgs {
    #[command(flatten)]
    pub shared: Shared,

    /// Edge-list file (`u v` per line, `#` comments).
    #[arg(long, short)]
    pub input: PathBuf,

    /// Largest q tabulated; needs strings of q edges.
    #[arg(long, default_value_t = 7)]
    pub qmax: usize,
}

pub const DEFAULT_GAMMA_GRID: [f64; 8] = [1.8, 2.0, 2.25, 2.5, 2.75, 3.0, 3.5, 4.0];
pub const DEFAULT_ALPHA_GRID: [f64; 9] = [0.0, 0.01, 0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0];

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub shared: Shared,

    #[arg(long, value_enum, default_value_t = SweepModel::Sf)]
    pub model: SweepModel,

    #[command(flatten)]
    pub params: ModelParams,

    #[arg(long, default_value_t = 7)]
    pub qmax: usize,

    #[arg(long, default_value_t = 20)]
    pub trials: usize,

    /// Comma-separated γ values for `sf` [default: 1.8,2.0,2.25,2.5,2.75,3.0,3.5,4.0].
    #[arg(long, value_delimiter = ',', num_args = 1.., action = ArgAction::Set)]
    pub gamma_grid: Option<Vec<f64>>,

    /// Comma-separated α values for `nw` [default: 0,0.01,0.05,0.1,0.2,0.4,0.6,0.8,1].
    #[arg(long, value_delimiter = ',', num_args = 1.., action = ArgAction::Set)]
    pub alpha_grid: Option<Vec<f64>>,

    /// Also write `milgram.svg` and `xy.svg`.
    #[arg(long)]
    pub plot: bool,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub shared: Shared,

    /// CSV file with a header row.
    #[arg(long, short)]
    pub input: PathBuf,

    /// `linear` (Y = A·X + B) or `loglinear` (Y = D·log10 X + E).
    #[arg(long, default_value = "linear")]
    pub model: String,

    /// Column holding the abscissa; `x` falls back to `X`, then `mean_X`.
    #[arg(long, default_value = "x")]
    pub xcol: String,

    /// Column holding the ordinate; `y` falls back to `Y`.
    #[arg(long, default_value = "y")]
    pub ycol: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// q against log10(M_q/N), one line per parameter value.
    Milgram,
    /// X against Y, one series per q.
    Xy,
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub shared: Shared,

    /// Aggregate CSV written by `sweep`.
    #[arg(long, short)]
    pub input: PathBuf,

    #[arg(long, value_enum, default_value_t = Figure::Milgram)]
    pub figure: Figure,
}
