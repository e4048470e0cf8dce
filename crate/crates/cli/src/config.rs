//! Validated run configuration built from the parsed command line.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use teardrop_core::mean_field::{surface_minimizer, BlochPoint};
use teardrop_core::{make_params, Params};

use crate::args::{Command, Format};
use crate::error::{as_usage, usage, CliResult};

pub const DEFAULT_N: usize = 20;
pub const DEFAULT_EPSILON: f64 = 0.0;
pub const DEFAULT_V: f64 = 1.0;

/// Inclusive detuning grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl Sweep {
    pub fn new(start: f64, end: f64, steps: usize) -> CliResult<Self> {
        if !start.is_finite() || !end.is_finite() {
            return usage("epsilon range bounds must be finite");
        }
        if steps < 2 {
            return usage(format!(
                "epsilon range needs at least 2 steps (got {steps})"
            ));
        }
        Ok(Sweep { start, end, steps })
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.end
                } else {
                    self.start + (self.end - self.start) * k as f64 / last
                }
            })
            .collect()
    }
}

impl FromStr for Sweep {
    type Err = crate::error::CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return usage(format!("epsilon range must be start:end:steps (got {s:?})"));
        };
        let num = |x: &str| {
            x.trim().parse::<f64>().map_err(|_| {
                crate::error::CliError::Usage(format!("bad number {x:?} in epsilon range"))
            })
        };
        let steps = n.trim().parse::<usize>().map_err(|_| {
            crate::error::CliError::Usage(format!("bad step count {n:?} in epsilon range"))
        })?;
        Sweep::new(num(a)?, num(b)?, steps)
    }
}

/// Initial state of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Init {
    GroundKx,
    GroundMinusKx,
    GroundKz,
    GroundMinusKz,
    Bloch(f64, f64, f64),
}

impl FromStr for Init {
    type Err = crate::error::CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "ground-kx" => Ok(Init::GroundKx),
            "ground-minus-kx" => Ok(Init::GroundMinusKx),
            "ground-kz" => Ok(Init::GroundKz),
            "ground-minus-kz" => Ok(Init::GroundMinusKz),
            _ => {
                let Some(rest) = s.strip_prefix("bloch:") else {
                    return usage(format!("unknown --init {s:?}"));
                };
                let xs: Vec<f64> = rest
                    .split(',')
                    .map(|x| x.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| {
                        crate::error::CliError::Usage(format!("bad bloch point {rest:?}"))
                    })?;
                match xs.as_slice() {
                    [x, y, z] => Ok(Init::Bloch(*x, *y, *z)),
                    _ => usage(format!("bloch point needs three components (got {rest:?})")),
                }
            }
        }
    }
}

impl Init {
    /// Coefficients `(a, b, c)` of the variational Hamiltonian `a K_x + b K_z + c K_y`
    /// whose ground state is the many-particle counterpart of this initial state.
    pub fn variational_coefficients(&self) -> (f64, f64, f64) {
        match *self {
            Init::GroundKx => (1.0, 0.0, 0.0),
            Init::GroundMinusKx => (-1.0, 0.0, 0.0),
            Init::GroundKz => (0.0, 1.0, 0.0),
            Init::GroundMinusKz => (0.0, -1.0, 0.0),
            Init::Bloch(x, y, z) => {
                if x == 0.0 && y == 0.0 && z <= -0.5 {
                    (0.0, 1.0, 0.0)
                } else {
                    // Minus the outward normal of the surface at the point.
                    let dr2 = 0.25 * (1.0 + 2.0 * z) * (2.0 - 12.0 * z);
                    (-2.0 * x, dr2, -2.0 * y)
                }
            }
        }
    }

    /// Mean-field point matching this initial state.
    pub fn bloch_point(&self) -> CliResult<BlochPoint<f64>> {
        match *self {
            Init::Bloch(x, y, z) => BlochPoint::new(x, y, z).map_err(as_usage),
            _ => {
                let (a, b, c) = self.variational_coefficients();
                Ok(surface_minimizer(a, b, c)?)
            }
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Init::GroundKx => "ground-kx".into(),
            Init::GroundMinusKx => "ground-minus-kx".into(),
            Init::GroundKz => "ground-kz".into(),
            Init::GroundMinusKz => "ground-minus-kz".into(),
            Init::Bloch(x, y, z) => format!("bloch:{x},{y},{z}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub params: Params,
    pub sweep: Option<Sweep>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_command(command: Command) -> CliResult<Self> {
        let common = command.common().clone();
        let default_n = match command {
            Command::KxSpectrum { .. } => 50,
            _ => DEFAULT_N,
        };
        let params = make_params(
            common.epsilon.unwrap_or(DEFAULT_EPSILON),
            common.v.unwrap_or(DEFAULT_V),
            common.n.unwrap_or(default_n),
        )
        .map_err(as_usage)?;
        let sweep = command.sweep().map(str::parse).transpose()?;
        if let Some(out) = &common.out {
            check_writable(out, matches!(command, Command::Figure { .. }))?;
        }
        Ok(RunConfig {
            command,
            params,
            sweep,
            output: common.out,
            format: common.format,
        })
    }

    pub fn common(&self) -> &crate::args::Common {
        self.command.common()
    }
}

fn check_writable(path: &Path, is_dir: bool) -> CliResult<()> {
    if is_dir {
        if path.exists() && !path.is_dir() {
            return usage(format!("{} exists and is not a directory", path.display()));
        }
        return Ok(());
    }
    if path.is_dir() {
        return usage(format!("{} is a directory", path.display()));
    }
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if !parent.is_dir() {
        return usage(format!(
            "output directory {} does not exist",
            parent.display()
        ));
    }
    Ok(())
}
