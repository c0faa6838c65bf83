use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Simulate a hybrid atom–photon controlled-Z gate and regenerate its
/// robustness datasets as CSV.
#[derive(Debug, Clone, Parser)]
#[command(name = "rydgate", version, args_override_self = true)]
pub struct Cli {
    /// Worker threads for sweeps (0 = all cores)
    #[arg(long, global = true, env = "RYDGATE_WORKERS", default_value_t = 0)]
    pub workers: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run one gate and write its population/phase/fidelity trajectory
    Simulate(SimulateArgs),
    /// Run a one-dimensional fidelity sweep
    Sweep(SweepArgs),
    /// Regenerate every figure dataset into a directory
    Figures(FiguresArgs),
    /// Dissipative GSC gate with cesium parameters; prints the final fidelity
    Example(ExampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    /// Rates in units of g (default g = 1), times in 1/g
    Dimensionless,
    /// Rates as ordinary frequencies in Hz (multiplied by 2π internally), times in seconds
    Hz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PulseArg {
    Rect,
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    /// g/Ω for both pulse kinds at their nominal gate times
    Ratio,
    /// Relative gate-time error
    RelErrT,
    /// Relative coupling error
    RelErrG,
    /// Stark detuning Δ₂ in units of g (GSC only)
    Detuning,
    /// Rydberg decay γ₁ = γ₂ in units of g
    Gamma,
    /// Cavity decay κ in units of g
    Kappa,
    /// Elapsed time (min must be 0)
    Time,
}

/// Physical parameters shared by `simulate` and `sweep`.
#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Read defaults from a `key = value` file; command-line flags win
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Unit system for rates and times
    #[arg(long, value_enum, default_value_t = Units::Dimensionless)]
    pub units: Units,

    /// Atom–photon coupling (default 1, or 2e6 Hz with --units hz)
    #[arg(long)]
    pub g: Option<f64>,

    /// Stark shift of |r2⟩
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub delta2: f64,

    /// Polarizability ratio α₂/α₁
    #[arg(long, default_value_t = crate::model::DEFAULT_POLAR_RATIO)]
    pub polar_ratio: f64,

    /// Decay rate of |r1⟩
    #[arg(long)]
    pub gamma1: Option<f64>,

    /// Decay rate of |r2⟩
    #[arg(long)]
    pub gamma2: Option<f64>,

    /// Sets both Rydberg decay rates
    #[arg(long)]
    pub gamma: Option<f64>,

    /// Cavity photon decay rate
    #[arg(long, default_value_t = 0.0)]
    pub kappa: f64,

    /// Integrate the master equation (implied by any nonzero decay rate)
    #[arg(long)]
    pub dissipative: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    /// Drive pulse shape
    #[arg(long, value_enum, default_value_t = PulseArg::Gaussian)]
    pub pulse: PulseArg,

    /// g/Ω (rect) or g/Ω_m (gaussian); defaults to √3/2 or 1.3
    #[arg(long)]
    pub ratio: Option<f64>,

    /// Evolution time instead of the nominal gate time
    #[arg(long)]
    pub duration: Option<f64>,

    /// Initial state: `product` or a basis label such as 0m1a, 1m1a, 1mr2
    #[arg(long, default_value = "product")]
    pub initial: String,

    /// Output CSV path (stdout when omitted or `-`)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    /// Swept quantity
    #[arg(long, value_enum)]
    pub axis: AxisArg,

    /// Lower end of the axis (axis default when omitted)
    #[arg(long, allow_negative_numbers = true)]
    pub min: Option<f64>,

    /// Upper end of the axis (axis default when omitted)
    #[arg(long, allow_negative_numbers = true)]
    pub max: Option<f64>,

    /// Number of grid points (axis default when omitted)
    #[arg(long)]
    pub points: Option<usize>,

    /// g/Ω_m of the GSC base
    #[arg(long, default_value_t = crate::experiments::GSC_RATIO)]
    pub gsc_ratio: f64,

    /// g/Ω of the rectangular comparison (√3/2 for error scans, 2.9 for decay and time)
    #[arg(long)]
    pub rect_ratio: Option<f64>,

    /// Output CSV path (stdout when omitted or `-`)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FiguresArgs {
    /// Read defaults from a `key = value` file; command-line flags win
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Directory receiving fig3.csv … fig8*.csv, plot scripts and example.txt
    #[arg(long, default_value = "figures")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ExampleArgs {
    /// Read defaults from a `key = value` file; command-line flags win
    #[arg(long)]
    pub config: Option<PathBuf>,
}
