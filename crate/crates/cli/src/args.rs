//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "teardrop",
    version,
    about = "Atom-molecule conversion: exact, mean-field and semiclassical data tables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        }
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Total atom number N (even).
    #[arg(long = "n")]
    pub n: Option<usize>,
    /// Detuning epsilon.
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: Option<f64>,
    /// Conversion strength v.
    #[arg(long, allow_negative_numbers = true)]
    pub v: Option<f64>,
    /// Output file (a directory for `figure`); stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct TrajectoryArgs {
    #[arg(long = "t-max", default_value_t = 20.0)]
    pub t_max: f64,
    /// Number of output samples including t = 0.
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    /// ground-kx | ground-minus-kx | ground-kz | ground-minus-kz | bloch:x,y,z
    #[arg(long, default_value = "ground-kx", allow_hyphen_values = true)]
    pub init: String,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Detuning sweep `start:end:steps` with steps >= 2.
    #[arg(long = "epsilon-range", allow_hyphen_values = true)]
    pub epsilon_range: Option<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Eigenvalues of H = eps K_z + v K_x.
    Spectrum {
        #[command(flatten)]
        common: Common,
    },
    /// Eigenvalues of K_x and K_y.
    KxSpectrum {
        #[command(flatten)]
        common: Common,
    },
    /// Spectrum along a detuning sweep.
    SweepSpectrum {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Bohr-Sommerfeld levels next to the exact ones.
    Quantize {
        #[command(flatten)]
        common: Common,
    },
    /// Semiclassical density of states T/(2 pi).
    Dos {
        #[command(flatten)]
        common: Common,
        /// Single rescaled energy; a grid over the energy range otherwise.
        #[arg(long, allow_negative_numbers = true)]
        energy: Option<f64>,
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// Classical period of the orbit at a rescaled energy.
    Period {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_negative_numbers = true)]
        energy: Option<f64>,
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// Mean-field fixed points and their stability.
    FixedPoints {
        #[command(flatten)]
        common: Common,
    },
    /// Mean-field trajectory on the teardrop surface.
    MfTrajectory {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        traj: TrajectoryArgs,
    },
    /// Exact many-particle expectation values along the evolution.
    MpTrajectory {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        traj: TrajectoryArgs,
    },
    /// WKB amplitudes of one level next to the exact eigenvector.
    WkbState {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        level: usize,
    },
    /// Rescaled moments of the variational states along the teardrop.
    CoherentSurface {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Exact versus semiclassical spectra along a detuning sweep.
    Compare {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Data behind one of the figures fig1 .. fig9.
    Figure {
        id: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long = "t-max")]
        t_max: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum { .. } => "spectrum",
            Command::KxSpectrum { .. } => "kx-spectrum",
            Command::SweepSpectrum { .. } => "sweep-spectrum",
            Command::Quantize { .. } => "quantize",
            Command::Dos { .. } => "dos",
            Command::Period { .. } => "period",
            Command::FixedPoints { .. } => "fixed-points",
            Command::MfTrajectory { .. } => "mf-trajectory",
            Command::MpTrajectory { .. } => "mp-trajectory",
            Command::WkbState { .. } => "wkb-state",
            Command::CoherentSurface { .. } => "coherent-surface",
            Command::Compare { .. } => "compare",
            Command::Figure { .. } => "figure",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Spectrum { common }
            | Command::KxSpectrum { common }
            | Command::SweepSpectrum { common, .. }
            | Command::Quantize { common }
            | Command::Dos { common, .. }
            | Command::Period { common, .. }
            | Command::FixedPoints { common }
            | Command::MfTrajectory { common, .. }
            | Command::MpTrajectory { common, .. }
            | Command::WkbState { common, .. }
            | Command::CoherentSurface { common, .. }
            | Command::Compare { common, .. }
            | Command::Figure { common, .. } => common,
        }
    }

    pub fn sweep(&self) -> Option<&str> {
        match self {
            Command::SweepSpectrum { sweep, .. }
            | Command::Compare { sweep, .. }
            | Command::Figure { sweep, .. } => sweep.epsilon_range.as_deref(),
            _ => None,
        }
    }
}
