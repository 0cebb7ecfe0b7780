use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::grid::GridSpec;

#[derive(Debug, Parser)]
#[command(name = "dce", version, about = "Particle creation by an oscillating delta/delta-prime mirror")]
pub struct Cli {
    /// Worker threads for scans (default: all cores).
    #[arg(long, env = "DCE_WORKERS", global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum N(omega) on both sides of the mirror.
    Spectrum(SpectrumArgs),
    /// Normalized total rate over a (mu/omega0, lambda) grid.
    Scan(ScanArgs),
    /// Ratio of right to left total rates against mu/omega0.
    Ratio(RatioArgs),
    /// Run the invariant batteries.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Mono,
    Finite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mirror {
    Ddp,
    Dirichlet,
    Neumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Double the coupling factor in the definitional path.
    LambdaDoubled,
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    #[arg(long, default_value_t = 0.01)]
    pub eps: f64,
    #[arg(long, default_value_t = 1000.0)]
    pub tau: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long = "out", value_enum, default_value_t = OutFormat::Csv)]
    pub format: OutFormat,
    /// Write here instead of stdout; a manifest sidecar is written next to it.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_enum, default_value_t = Mirror::Ddp)]
    pub mirror: Mirror,
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lambda: f64,
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long, default_value_t = 121)]
    pub points: usize,
    /// Upper end of xi = omega/omega0.
    #[arg(long, default_value_t = 1.2)]
    pub xi_max: f64,
    #[arg(long, value_enum, default_value_t = Mode::Mono)]
    pub mode: Mode,
    /// Emit N/tau instead of the figure units (eps^2 tau/pi)^-1 N.
    #[arg(long)]
    pub raw: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long, default_value = "0.1:10:21:log")]
    pub mu_grid: GridSpec,
    #[arg(long, default_value = "-3:3:21", allow_hyphen_values = true)]
    pub lambda_grid: GridSpec,
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RatioArgs {
    #[arg(long, default_value = "0,0.5,1,2", allow_hyphen_values = true)]
    pub lambda_list: String,
    #[arg(long, default_value = "0.1:10:41:log")]
    pub mu_grid: GridSpec,
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Smaller batteries.
    #[arg(long)]
    pub quick: bool,
    /// Negative control: corrupt one computation and expect failures.
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}
