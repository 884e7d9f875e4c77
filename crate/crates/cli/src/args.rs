use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "dmom", version, about = "Photon momentum in weakly dispersive dielectrics")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Dispersion model: `vacuum`, `bk7`, or a .toml/.csv model file
    #[arg(long, global = true, default_value = "bk7")]
    pub model: String,

    /// Vacuum wavelength, nm
    #[arg(long = "lambda-nm", global = true, default_value_t = 632.8)]
    pub lambda_nm: f64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,

    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Phase index, group index and velocities of one mode or a sweep
    Dispersion(DispersionArgs),
    /// Canonical, Abraham and Minkowski momenta of a single photon
    Momentum(MomentumArgs),
    /// Radiation-pressure ratios scored against liquid measurements
    Pressure(PressureArgs),
    /// Collinear or degenerate non-collinear phase matching for SPDC
    Phasematch(PhasematchArgs),
    /// Operator eigenvalues for the number states of a Fock scenario
    Fock(FockArgs),
    /// Gaussian wave-packet propagation and energy bookkeeping
    Wavepacket(WavepacketArgs),
}

#[derive(Debug, Args)]
pub struct DispersionArgs {
    /// Sweep from this wavelength (nm) to --to-nm instead of a single point
    #[arg(long = "from-nm", requires = "to_nm")]
    pub from_nm: Option<f64>,

    #[arg(long = "to-nm", requires = "from_nm")]
    pub to_nm: Option<f64>,

    #[arg(long, default_value_t = 11)]
    pub steps: usize,

    /// Spectral half-width (rad/s) for the weak-dispersion ratio
    #[arg(long = "delta-omega")]
    pub delta_omega: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MomentumArgs {
    /// Photon helicity, +1 or -1
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub helicity: i32,
}

#[derive(Debug, Args)]
pub struct PressureArgs {
    /// Score the embedded Jones–Leslie table (the default)
    #[arg(long = "reproduce-table", conflicts_with = "table")]
    pub reproduce_table: bool,

    /// CSV with columns name,r_exp,sigma,r_can,r_m,r_a
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryArg {
    Collinear,
    Noncollinear,
}

#[derive(Debug, Args)]
pub struct PhasematchArgs {
    #[arg(long, value_enum, default_value_t = GeometryArg::Collinear)]
    pub geometry: GeometryArg,

    /// Momentum-mismatch tolerance, 1/m
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,

    /// Signal search band as two wavelengths in nm
    #[arg(long = "signal-band-nm", num_args = 2, value_names = ["NM", "NM"])]
    pub signal_band_nm: Option<Vec<f64>>,

    /// Emit the collinear mismatch curve on this many samples instead
    #[arg(long)]
    pub curve: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FockArgs {
    /// Scenario file (TOML)
    #[arg(long)]
    pub scenario: PathBuf,
}

#[derive(Debug, Args)]
pub struct WavepacketArgs {
    /// rms width of |A(k)|² relative to k₀
    #[arg(long = "delta-k-rel", default_value_t = 1e-3)]
    pub delta_k_rel: f64,

    /// Number of k samples (a power of two)
    #[arg(long, default_value_t = 4096)]
    pub samples: usize,

    /// Periodic domain length, m; by default the k-grid spans ±12σ_k
    #[arg(long)]
    pub length: Option<f64>,

    /// Snapshot times, s; by default five times over a quarter domain transit
    #[arg(long, value_delimiter = ',')]
    pub times: Option<Vec<f64>>,

    /// Mean photon number the packet is scaled to
    #[arg(long, default_value_t = 1.0)]
    pub photons: f64,

    /// Transverse area, m²
    #[arg(long, default_value_t = 1e-10)]
    pub area: f64,

    /// Write one CSV per snapshot (z, Re A, Im A, |A|²) into this directory
    #[arg(long = "snapshot-dir")]
    pub snapshot_dir: Option<PathBuf>,
}
