//! Argument definitions and command dispatch for the `stirling-cert` binary.

pub mod commands;
pub mod numfmt;
pub mod reproduce;
pub mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stirling_cert::asymptotics::{QConvention, Regime};
use stirling_cert::bounds::{CapConvention, S4Exponent, TFactor};
use stirling_cert::exact::AttackMode;
use stirling_cert::sim::Model;
use stirling_cert::{FerrersBoard, StirlingKind};

pub use commands::{run, Output, Status};

#[derive(Debug, Parser)]
#[command(name = "stirling-cert", version, about = "Certified Poisson-approximation enclosures for Stirling, rook and file numbers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Human,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enclosures of |s(n, n-k)| and S(n, n-k) on the staircase board.
    Bound(BoundArgs),
    /// Exact Stirling, rook or file numbers.
    Exact(ExactArgs),
    /// A reference asymptotic estimate.
    Asymptotic(AsymptoticArgs),
    /// Monte Carlo estimates for the placement model or the swap coupling.
    Simulate(SimulateArgs),
    /// D2(n, k) for n = 11..30, k = 3, 4.
    Table,
    /// Containment sweep against the exact oracles.
    Verify(VerifyArgs),
    /// Enclosures of rook and file numbers of a Ferrers board.
    Ferrers(FerrersArgs),
    /// The two log-space enclosures at n = 1e12, k = 2e6.
    Abstract,
}

fn count(s: &str) -> Result<u64, String> {
    numfmt::parse_count(s).map_err(|e| e.to_string())
}

fn kind(s: &str) -> Result<StirlingKind, String> {
    s.parse().map_err(|e: stirling_cert::Error| e.to_string())
}

fn board(s: &str) -> Result<FerrersBoard, String> {
    s.parse().map_err(|e: stirling_cert::Error| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Exact prefactor up to the threshold, log-space above it.
    Auto,
    Exact,
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Subset,
    Independent,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Subset => Model::Subset,
            ModelArg::Independent => Model::Independent,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CapArg {
    /// mu1 in the first cap, mu2 in the second.
    Rate,
    /// 2 mu2 in the second cap.
    Doubled,
}

impl From<CapArg> for CapConvention {
    fn from(c: CapArg) -> Self {
        match c {
            CapArg::Rate => CapConvention::Rate,
            CapArg::Doubled => CapConvention::DoubledSecond,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TFactorArg {
    Unit,
    OneMinusT,
}

impl From<TFactorArg> for TFactor {
    fn from(t: TFactorArg) -> Self {
        match t {
            TFactorArg::Unit => TFactor::Unit,
            TFactorArg::OneMinusT => TFactor::OneMinusT,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QArg {
    /// q = 2/m
    M,
    /// q = 2/(n-m)
    NMinusM,
}

impl From<QArg> for QConvention {
    fn from(q: QArg) -> Self {
        match q {
            QArg::M => QConvention::OverM,
            QArg::NMinusM => QConvention::OverNMinusM,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    MoserWyman,
    ImplicitRSecond,
    ImplicitRFirst,
    Jordan,
    Sachkov,
    FullRange,
    Parametrized,
    Louchard,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::MoserWyman => Regime::MoserWyman,
            RegimeArg::ImplicitRSecond => Regime::ImplicitRSecond,
            RegimeArg::ImplicitRFirst => Regime::ImplicitRFirst,
            RegimeArg::Jordan => Regime::Jordan,
            RegimeArg::Sachkov => Regime::Sachkov,
            RegimeArg::FullRange => Regime::FullRange,
            RegimeArg::Parametrized => Regime::Parametrized,
            RegimeArg::Louchard => Regime::Louchard,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AttackArg {
    Both,
    Columns,
}

impl From<AttackArg> for AttackMode {
    fn from(a: AttackArg) -> Self {
        match a {
            AttackArg::Both => AttackMode::RowsAndColumns,
            AttackArg::Columns => AttackMode::ColumnsOnly,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum S4Arg {
    Square,
    Cube,
}

impl From<S4Arg> for S4Exponent {
    fn from(s: S4Arg) -> Self {
        match s {
            S4Arg::Square => S4Exponent::Square,
            S4Arg::Cube => S4Exponent::Cube,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HistogramFormat {
    Tsv,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_parser = count)]
    pub n: u64,
    #[arg(long, value_parser = count)]
    pub k: u64,
    /// Restrict the human output to one kind (1 or 2).
    #[arg(long, value_parser = kind)]
    pub kind: Option<StirlingKind>,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    /// Largest N = C(n,2) handled exactly in auto mode.
    #[arg(long, value_parser = count, default_value = "1e6")]
    pub threshold: u64,
    #[arg(long, value_enum, default_value_t = ModelArg::Subset)]
    pub model: ModelArg,
    #[arg(long, value_enum, default_value_t = CapArg::Rate)]
    pub cap_convention: CapArg,
    #[arg(long, value_enum, default_value_t = TFactorArg::Unit)]
    pub t_factor: TFactorArg,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long, value_parser = count)]
    pub n: Option<u64>,
    #[arg(long, value_parser = count)]
    pub m: Option<u64>,
    /// Number of rooks; for Stirling numbers `m = n - k`.
    #[arg(long, value_parser = count)]
    pub k: Option<u64>,
    #[arg(long, value_parser = kind, default_value = "2")]
    pub kind: StirlingKind,
    /// Rook and file numbers of this board instead.
    #[arg(long, value_parser = board)]
    pub board: Option<FerrersBoard>,
}

#[derive(Debug, Args)]
pub struct AsymptoticArgs {
    #[arg(long, value_enum)]
    pub regime: RegimeArg,
    #[arg(long, value_parser = count)]
    pub n: u64,
    #[arg(long, value_parser = count)]
    pub m: Option<u64>,
    #[arg(long, value_parser = count)]
    pub k: Option<u64>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, value_parser = kind, default_value = "2")]
    pub kind: StirlingKind,
    /// Moser-Wyman truncation order (0..=3).
    #[arg(long, default_value_t = 3)]
    pub s: u32,
    #[arg(long, value_enum, default_value_t = QArg::M)]
    pub q_convention: QArg,
    /// Also compute the exact value (n up to 5000).
    #[arg(long)]
    pub compare: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_parser = board)]
    pub board: FerrersBoard,
    #[arg(long, value_parser = count)]
    pub k: u64,
    #[arg(long, value_enum, default_value_t = ModelArg::Subset)]
    pub model: ModelArg,
    #[arg(long, value_enum, default_value_t = AttackArg::Both)]
    pub attacks: AttackArg,
    #[arg(long, value_parser = count, default_value = "100000")]
    pub replicas: u64,
    #[arg(long, value_parser = count, default_value = "0")]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub streams: usize,
    /// Run the swap coupling for rooks 1 and 2.
    #[arg(long)]
    pub coupling: bool,
    /// Emit the W histogram; to stdout unless --histogram-out is given.
    #[arg(long, value_enum)]
    pub emit_histogram: Option<HistogramFormat>,
    #[arg(long)]
    pub histogram_out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = count, default_value = "40")]
    pub n_max: u64,
    #[arg(long, value_parser = count, default_value = "40")]
    pub k_max: u64,
    #[arg(long, default_value_t = 50)]
    pub boards: usize,
    #[arg(long, value_parser = count, default_value = "7")]
    pub board_seed: u64,
    #[arg(long, default_value_t = 300)]
    pub max_cells: usize,
    #[arg(long, value_parser = count, default_value = "12")]
    pub max_rooks: u64,
}

#[derive(Debug, Args)]
pub struct FerrersArgs {
    #[arg(long, value_parser = board)]
    pub board: FerrersBoard,
    #[arg(long, value_parser = count)]
    pub k: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    #[arg(long, value_parser = count, default_value = "1e6")]
    pub threshold: u64,
    #[arg(long, value_enum, default_value_t = S4Arg::Square)]
    pub s4_exponent: S4Arg,
}
