//! `speccx`: spectral complexity, almost-cyclic clustering, graph energy and
//! Fiedler baselines for directed graphs.
//!
//! Exit codes: 0 success, 2 usage, 3 I/O, 4 parse, 5 validation,
//! 6 numerical failure, 7 degenerate clustering.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spectral_complexity::complexity::{BetaSource, GammaMode, SpectralWeight, ZeroEigPolicy};
use spectral_complexity::cycleclust::{ClusterScope, TrimRank};
use spectral_complexity::spectra::ToleranceConfig;
use spectral_complexity::Error;

#[derive(Parser)]
#[command(name = "speccx", version, about = "Spectral complexity and cycle clustering of directed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral and total complexity of a graph.
    Complexity(ComplexityArgs),
    /// Almost-cyclic clustering from the generating eigenvector.
    Cluster(ClusterArgs),
    /// Graph energy (mean edge weight times the adjacency nuclear norm).
    Energy(EnergyArgs),
    /// Fiedler-vector bipartition of the symmetrized graph.
    Fiedler(FiedlerArgs),
    /// Mean complexity of random digraphs over a range of average degrees.
    BaselineSweep(SweepArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Format {
    Snap,
    Csv,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum ScopeArg {
    Full,
    LargestScc,
}

impl From<ScopeArg> for ClusterScope {
    fn from(s: ScopeArg) -> Self {
        match s {
            ScopeArg::Full => ClusterScope::Full,
            ScopeArg::LargestScc => ClusterScope::LargestScc,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum ZeroPolicyArg {
    Exclude,
    Include,
}

impl From<ZeroPolicyArg> for ZeroEigPolicy {
    fn from(z: ZeroPolicyArg) -> Self {
        match z {
            ZeroPolicyArg::Exclude => ZeroEigPolicy::ExcludeZeros,
            ZeroPolicyArg::Include => ZeroEigPolicy::IncludeZeros,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum GammaModeArg {
    Expectation,
    Max,
}

impl From<GammaModeArg> for GammaMode {
    fn from(g: GammaModeArg) -> Self {
        match g {
            GammaModeArg::Expectation => GammaMode::Expectation,
            GammaModeArg::Max => GammaMode::Max,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum BetaArg {
    /// Edges removed while stripping sources.
    Removed,
    /// Every input edge.
    All,
}

impl From<BetaArg> for BetaSource {
    fn from(b: BetaArg) -> Self {
        match b {
            BetaArg::Removed => BetaSource::RemovedEdges,
            BetaArg::All => BetaSource::AllEdges,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum RankArg {
    Magnitude,
    Real,
}

impl From<RankArg> for TrimRank {
    fn from(r: RankArg) -> Self {
        match r {
            RankArg::Magnitude => TrimRank::MagnitudeDesc,
            RankArg::Real => TrimRank::RealAsc,
        }
    }
}

#[derive(Args, Clone, Debug)]
pub struct InputArgs {
    /// Edge list to analyse.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "snap")]
    pub format: Format,
    /// Optional `node,alpha` file with per-node complexity weights.
    #[arg(long)]
    pub node_weights: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
pub struct ToleranceArgs {
    /// Eigenvalues with smaller modulus count as zero.
    #[arg(long, default_value_t = 1e-6)]
    pub zero_tol: f64,
    /// Eigenvalues this close to 1 count as one.
    #[arg(long, default_value_t = 1e-6)]
    pub one_tol: f64,
    /// Imaginary parts below this count as real.
    #[arg(long, default_value_t = 1e-9)]
    pub real_axis_tol: f64,
    /// Eigenvalues this close to the primary generator are also generators.
    #[arg(long, default_value_t = 1e-4)]
    pub generator_tol: f64,
}

impl ToleranceArgs {
    pub fn config(&self) -> Result<ToleranceConfig, Error> {
        let t = ToleranceConfig {
            zero_mod_tol: self.zero_tol,
            one_tol: self.one_tol,
            real_axis_tol: self.real_axis_tol,
            generator_match_tol: self.generator_tol,
        };
        t.validate()?;
        Ok(t)
    }
}

#[derive(Args, Clone, Debug)]
pub struct ComplexityArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "full")]
    pub scope: ScopeArg,
    #[arg(long, value_enum, default_value = "exclude")]
    pub zero_policy: ZeroPolicyArg,
    /// Weight of the spectral term in the total complexity, or "inf".
    #[arg(long = "W", default_value = "inf")]
    pub w: String,
    /// Fixed gamma; estimated from the input (and --gamma-from graphs) when omitted.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, value_enum, default_value = "expectation")]
    pub gamma_mode: GammaModeArg,
    /// Additional graphs (same format) used to estimate gamma.
    #[arg(long, num_args = 1..)]
    pub gamma_from: Vec<PathBuf>,
    /// Which edge weights enter the total complexity.
    #[arg(long, value_enum, default_value = "removed")]
    pub beta: BetaArg,
    #[command(flatten)]
    pub tol: ToleranceArgs,
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Args, Clone, Debug)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "full")]
    pub scope: ScopeArg,
    /// Grid step of the trimming sweep, as a fraction.
    #[arg(long, default_value_t = 0.001)]
    pub trim_step: f64,
    /// Order in which trimming keeps nodes.
    #[arg(long, value_enum, default_value = "magnitude")]
    pub trim_rank: RankArg,
    /// Largest cycle order searched.
    #[arg(long, default_value_t = 50)]
    pub kmax: usize,
    /// Eigenvector components below this modulus count as zero.
    #[arg(long, default_value_t = 1e-8)]
    pub component_zero_tol: f64,
    #[command(flatten)]
    pub tol: ToleranceArgs,
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Args, Clone, Debug)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// OR the adjacency matrix with its transpose first.
    #[arg(long)]
    pub symmetrize: bool,
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Args, Clone, Debug)]
pub struct FiedlerArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "largest-scc")]
    pub scope: ScopeArg,
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Args, Clone, Debug)]
pub struct SweepArgs {
    /// Nodes per random graph.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    /// Average degrees, e.g. "1..20" or "1,2,5,10".
    #[arg(long, default_value = "1..20")]
    pub degrees: String,
    #[arg(long, default_value_t = 10)]
    pub realizations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "exclude")]
    pub zero_policy: ZeroPolicyArg,
    #[command(flatten)]
    pub tol: ToleranceArgs,
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

pub fn parse_weight(s: &str) -> Result<SpectralWeight, Error> {
    s.parse()
}

/// Distinct exit code per failure class.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 3,
        Error::Parse { .. } | Error::EmptyGraph => 4,
        Error::Validation(_) => 5,
        Error::NonFinite | Error::NonConvergence { .. } | Error::MissingEigenvectors | Error::EmptySpectrum => 6,
        Error::NoCycle
        | Error::DegenerateSpectrum { .. }
        | Error::DegenerateEigenvector
        | Error::Disconnected { .. }
        | Error::NoCut => 7,
        Error::Realization { source, .. } => exit_code(source),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Complexity(a) => commands::complexity(a),
        Command::Cluster(a) => commands::cluster(a),
        Command::Energy(a) => commands::energy(a),
        Command::Fiedler(a) => commands::fiedler(a),
        Command::BaselineSweep(a) => commands::baseline_sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("speccx: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
