//! Command-line front end for `teardrop-core`.
//!
//! Every subcommand builds one or more [`TableArtifact`]s and writes them as
//! CSV, JSON or SVG. Runs are deterministic: identical arguments give
//! byte-identical output.

pub mod args;
pub mod artifact;
pub mod commands;
pub mod compare;
pub mod config;
pub mod error;
pub mod figures;
mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;

pub use artifact::{TableArtifact, Value};
pub use compare::compare_spectra;
pub use config::{Init, RunConfig, Sweep};
pub use error::{CliError, CliResult};

use args::{Cli, Command, Format};
use error::usage;

/// Parse `argv`, run the command and write its tables; returns the exit code.
pub fn run<I, A>(argv: I) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match RunConfig::from_command(cli.command).and_then(|cfg| {
        let tables = execute(&cfg)?;
        write_tables(&cfg, &tables)
    }) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("teardrop: {e}");
            e.exit_code()
        }
    }
}

/// Build the tables for a validated configuration.
pub fn execute(cfg: &RunConfig) -> CliResult<Vec<TableArtifact>> {
    let p = &cfg.params;
    let sweep = || {
        cfg.sweep
            .unwrap_or(Sweep {
                start: -4.0,
                end: 4.0,
                steps: 81,
            })
            .values()
    };
    let one = |t: CliResult<TableArtifact>| t.map(|t| vec![t]);
    match &cfg.command {
        Command::Spectrum { .. } => one(commands::spectrum(p, "spectrum")),
        Command::KxSpectrum { .. } => one(commands::kx_spectrum(p.n_particles, "kx-spectrum")),
        Command::SweepSpectrum { .. } => {
            one(commands::sweep_spectrum(p, &sweep(), "sweep-spectrum"))
        }
        Command::Quantize { .. } => one(commands::quantize_table(p)),
        Command::Dos {
            energy, samples, ..
        } => one(commands::dos_table(p, *energy, *samples)),
        Command::Period {
            energy, samples, ..
        } => one(commands::period_table(p, *energy, *samples)),
        Command::FixedPoints { .. } => one(commands::fixed_points_table(p, "fixed-points")),
        Command::MfTrajectory { traj, .. } => one(commands::mf_trajectory(
            p,
            &traj.init.parse()?,
            traj.t_max,
            traj.samples,
            "mf-trajectory",
        )),
        Command::MpTrajectory { traj, .. } => one(commands::mp_trajectory(
            p,
            &traj.init.parse()?,
            traj.t_max,
            traj.samples,
            "mp-trajectory",
        )),
        Command::WkbState { level, .. } => one(commands::wkb_table(p, *level, "wkb-state")),
        Command::CoherentSurface { samples, .. } => one(commands::coherent_surface(
            p.n_particles,
            *samples,
            "coherent-surface",
        )),
        Command::Compare { .. } => one(compare_spectra(p, &sweep(), "compare")),
        Command::Figure {
            id,
            common,
            t_max,
            samples,
            ..
        } => figures::figure(
            id,
            &figures::Overrides {
                n: common.n,
                epsilon: common.epsilon,
                v: common.v,
                sweep: cfg.sweep,
                t_max: *t_max,
                samples: *samples,
            },
        ),
    }
}

fn encode(t: &TableArtifact, format: Format) -> String {
    match format {
        Format::Csv => t.to_csv(),
        Format::Json => t.to_json(),
        Format::Svg => svg::render(t),
    }
}

fn write_file(path: &Path, body: &str) -> CliResult<()> {
    fs::write(path, body).or_else(|e| usage(format!("cannot write {}: {e}", path.display())))
}

/// Single-table commands write one file; `figure` writes `<name>.<ext>` into a directory.
pub fn write_tables(cfg: &RunConfig, tables: &[TableArtifact]) -> CliResult<()> {
    let is_figure = matches!(cfg.command, Command::Figure { .. });
    match &cfg.output {
        Some(dir) if is_figure => {
            fs::create_dir_all(dir)
                .or_else(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
            for t in tables {
                let path = dir.join(format!("{}.{}", t.name, cfg.format.extension()));
                write_file(&path, &encode(t, cfg.format))?;
            }
            Ok(())
        }
        Some(path) => {
            let body: Vec<String> = tables.iter().map(|t| encode(t, cfg.format)).collect();
            write_file(path, &body.join("\n"))
        }
        None => {
            let mut out = std::io::stdout().lock();
            for (i, t) in tables.iter().enumerate() {
                if i > 0 {
                    let _ = writeln!(out);
                }
                out.write_all(encode(t, cfg.format).as_bytes())
                    .or_else(|e| usage(format!("cannot write to stdout: {e}")))?;
            }
            Ok(())
        }
    }
}
