//! Table builders behind the subcommands.

use rayon::prelude::*;

use teardrop_core::many_particle::{
    build_generators, build_hamiltonian, exact_spectrum, hamiltonian_tridiagonal, observables,
    tridiagonal_spectrum, variational_ground_state, Propagator, VariationalSpec,
};
use teardrop_core::mean_field::{
    distance_to_cross_section, energy_bounds, fixed_points, integrate_trajectory, mf_energy,
    uniform_times, DEFAULT_TOL,
};
use teardrop_core::semiclassics::{density_of_states, period, quantize, wkb_state};
use teardrop_core::{basis_states, make_params, teardrop_radius, Params};

use crate::artifact::{format_num, TableArtifact, Value};
use crate::config::Init;
use crate::error::{as_usage, usage, CliResult};

/// Attach `N`, `epsilon`, `v` and `eta` to the metadata block.
pub fn with_params(t: TableArtifact, p: &Params) -> TableArtifact {
    t.meta("N", p.n_particles)
        .meta("epsilon", format_num(p.epsilon))
        .meta("v", format_num(p.v))
        .meta("eta", format_num(p.eta))
}

pub fn spectrum(p: &Params, name: &str) -> CliResult<TableArtifact> {
    let mut t = with_params(
        TableArtifact::new(name, "spectrum", &["n", "energy", "energy_rescaled"]),
        p,
    )
    .with_plot(0, &[1], None);
    for (n, e) in tridiagonal_spectrum(p)?.into_iter().enumerate() {
        t.push(vec![n.into(), e.into(), (p.eta * e).into()]);
    }
    Ok(t)
}

pub fn kx_spectrum(n_particles: usize, name: &str) -> CliResult<TableArtifact> {
    let basis = basis_states::<f64>(n_particles).map_err(as_usage)?;
    let eta = teardrop_core::eta_for::<f64>(n_particles);
    let gens = build_generators(&basis);
    let kx = exact_spectrum(&gens.kx, false)?.values;
    let ky = exact_spectrum(&gens.ky, false)?.values;
    let mut t = TableArtifact::new(
        name,
        "kx-spectrum",
        &["n", "kx", "ky", "kx_rescaled", "ky_rescaled"],
    )
    .meta("N", n_particles)
    .meta("eta", format_num(eta))
    .with_plot(0, &[1, 2], None);
    for (n, (x, y)) in kx.iter().zip(&ky).enumerate() {
        t.push(vec![
            n.into(),
            (*x).into(),
            (*y).into(),
            (eta * x).into(),
            (eta * y).into(),
        ]);
    }
    Ok(t)
}

/// Spectra for every detuning of the sweep, in sweep order.
pub fn sweep_spectrum(p: &Params, eps: &[f64], name: &str) -> CliResult<TableArtifact> {
    let spectra: Vec<Vec<f64>> = eps
        .par_iter()
        .map(|&e| tridiagonal_spectrum(&p.with_couplings(e, p.v)))
        .collect::<Result<_, _>>()?;
    let mut t = TableArtifact::new(
        name,
        "sweep-spectrum",
        &["epsilon", "n", "energy", "energy_rescaled"],
    )
    .meta("N", p.n_particles)
    .meta("v", format_num(p.v))
    .meta("eta", format_num(p.eta))
    .with_plot(0, &[2], Some(1));
    for (&e, levels) in eps.iter().zip(&spectra) {
        for (n, &x) in levels.iter().enumerate() {
            t.push(vec![e.into(), n.into(), x.into(), (p.eta * x).into()]);
        }
    }
    Ok(t)
}

pub fn quantize_table(p: &Params) -> CliResult<TableArtifact> {
    let exact = tridiagonal_spectrum(p)?;
    let sc = quantize(p)?;
    let mut t = with_params(
        TableArtifact::new(
            "quantize",
            "quantize",
            &[
                "n",
                "exact",
                "semiclassical",
                "abs_error",
                "energy_rescaled",
                "action",
            ],
        ),
        p,
    )
    .with_plot(0, &[1, 2], None);
    for (lvl, &x) in sc.levels.iter().zip(&exact) {
        t.push(vec![
            lvl.n.into(),
            x.into(),
            lvl.energy_mp.into(),
            (lvl.energy_mp - x).abs().into(),
            lvl.energy_mf.into(),
            lvl.action.into(),
        ]);
    }
    Ok(t)
}

/// Rescaled energies at bin centres of `samples` equal cells spanning the classical range.
pub fn energy_grid(p: &Params, samples: usize) -> CliResult<Vec<f64>> {
    if samples == 0 {
        return usage("--samples must be positive");
    }
    let (lo, hi) = energy_bounds(p)?;
    let w = (hi - lo) / samples as f64;
    Ok((0..samples).map(|k| lo + (k as f64 + 0.5) * w).collect())
}

fn energies_for(p: &Params, energy: Option<f64>, samples: usize) -> CliResult<Vec<f64>> {
    match energy {
        Some(e) => {
            let (lo, hi) = energy_bounds(p)?;
            if !(e >= lo && e <= hi) {
                return usage(format!(
                    "energy {e} outside the classical range [{lo}, {hi}]"
                ));
            }
            Ok(vec![e])
        }
        None => energy_grid(p, samples),
    }
}

pub fn dos_table(p: &Params, energy: Option<f64>, samples: usize) -> CliResult<TableArtifact> {
    let es = energies_for(p, energy, samples)?;
    let rows: Vec<(f64, f64)> = es
        .par_iter()
        .map(|&e| Ok((period(e, p)?, density_of_states(e, p)?)))
        .collect::<CliResult<_>>()?;
    let mut t = with_params(
        TableArtifact::new(
            "dos",
            "dos",
            &["energy_rescaled", "energy", "period", "density_of_states"],
        ),
        p,
    )
    .with_plot(1, &[3], None);
    for (&e, (per, dos)) in es.iter().zip(rows) {
        t.push(vec![e.into(), (e / p.eta).into(), per.into(), dos.into()]);
    }
    Ok(t)
}

pub fn period_table(p: &Params, energy: Option<f64>, samples: usize) -> CliResult<TableArtifact> {
    let es = energies_for(p, energy, samples)?;
    let periods: Vec<f64> = es
        .par_iter()
        .map(|&e| period(e, p))
        .collect::<Result<_, _>>()?;
    let mut t = with_params(
        TableArtifact::new("period", "period", &["energy_rescaled", "period"]),
        p,
    )
    .with_plot(0, &[1], None);
    for (&e, per) in es.iter().zip(periods) {
        t.push(vec![e.into(), per.into()]);
    }
    Ok(t)
}

pub fn fixed_points_table(p: &Params, name: &str) -> CliResult<TableArtifact> {
    let mut t = with_params(
        TableArtifact::new(
            name,
            "fixed-points",
            &[
                "s_x",
                "s_y",
                "s_z",
                "stability",
                "energy_rescaled",
                "energy",
            ],
        ),
        p,
    );
    for fp in fixed_points(p)? {
        let s = fp.location;
        t.push(vec![
            s.sx.into(),
            s.sy.into(),
            s.sz.into(),
            format!("{:?}", fp.stability).to_lowercase().as_str().into(),
            fp.energy.into(),
            (fp.energy / p.eta).into(),
        ]);
    }
    Ok(t)
}

pub fn mf_trajectory(
    p: &Params,
    init: &Init,
    t_max: f64,
    samples: usize,
    name: &str,
) -> CliResult<TableArtifact> {
    let times = uniform_times(t_max, samples).map_err(as_usage)?;
    let s0 = init.bloch_point()?;
    let traj = integrate_trajectory(&s0, &times, p, DEFAULT_TOL)?;
    let mut t = with_params(
        TableArtifact::new(
            name,
            "mf-trajectory",
            &[
                "t",
                "s_x",
                "s_y",
                "s_z",
                "energy_rescaled",
                "surface_residual",
            ],
        ),
        p,
    )
    .meta("init", init.label())
    .meta("tolerance", format_num(DEFAULT_TOL))
    .meta("energy_drift", format_num(traj.energy_drift))
    .meta("surface_drift", format_num(traj.surface_drift))
    .with_plot(0, &[1, 2, 3], None);
    for (&time, s) in traj.times.iter().zip(&traj.points) {
        t.push(vec![
            time.into(),
            s.sx.into(),
            s.sy.into(),
            s.sz.into(),
            mf_energy(s, p).into(),
            s.surface_residual().into(),
        ]);
    }
    Ok(t)
}

pub fn mp_trajectory(
    p: &Params,
    init: &Init,
    t_max: f64,
    samples: usize,
    name: &str,
) -> CliResult<TableArtifact> {
    let times = uniform_times(t_max, samples).map_err(as_usage)?;
    let basis = basis_states::<f64>(p.n_particles)?;
    let gens = build_generators(&basis);
    let h = build_hamiltonian(p);
    let prop = Propagator::new(&h, p.n_particles)?;
    let (a, b, c) = init.variational_coefficients();
    let spec = VariationalSpec::new(a, b, c).map_err(as_usage)?;
    let psi0 = variational_ground_state(&spec, &basis)?.state;
    let coeffs = prop.coefficients(&psi0)?;
    let mut t = with_params(
        TableArtifact::new(
            name,
            "mp-trajectory",
            &["t", "s_x", "s_y", "s_z", "norm", "energy"],
        ),
        p,
    )
    .meta("init", init.label())
    .with_plot(0, &[1, 2, 3], None);
    let rows: Vec<Vec<Value>> = times
        .par_iter()
        .map(|&time| {
            let psi = prop.evolve_from_coefficients(&coeffs, time);
            let m = observables(&psi, &gens, &h);
            let [x, y, z] = m.scaled_first_moments(p.eta);
            vec![
                time.into(),
                x.into(),
                y.into(),
                z.into(),
                psi.norm().into(),
                m.energy.into(),
            ]
        })
        .collect();
    for row in rows {
        t.push(row);
    }
    Ok(t)
}

pub fn wkb_table(p: &Params, level: usize, name: &str) -> CliResult<TableArtifact> {
    let dim = p.dimension();
    if level >= dim {
        return usage(format!(
            "--level must be below N/2 + 1 = {dim} (got {level})"
        ));
    }
    let w = wkb_state(level, p)?;
    let eig = hamiltonian_tridiagonal(p).eigen(true)?;
    let vecs = eig.vectors.expect("requested eigenvectors");
    let exact: Vec<f64> = (0..dim).map(|i| vecs[i * dim + level].abs()).collect();
    let overlap: f64 = exact.iter().zip(&w.amplitudes).map(|(a, b)| a * b).sum();
    let mut t = with_params(
        TableArtifact::new(
            name,
            "wkb-state",
            &["m", "p", "exact_abs", "wkb", "unreliable"],
        ),
        p,
    )
    .meta("level", level)
    .meta("energy_rescaled", format_num(w.energy_mf))
    .meta("overlap", format_num(overlap))
    .with_plot(1, &[2, 3], None);
    for (i, &m) in w.grid.iter().enumerate() {
        t.push(vec![
            m.into(),
            (p.eta * m).into(),
            exact[i].into(),
            w.amplitudes[i].into(),
            usize::from(w.unreliable[i]).into(),
        ]);
    }
    Ok(t)
}

/// Rescaled moments `(eta <K_x>, eta <K_z>)` of the ground states of
/// `a K_x + b K_z` with `a = +-r(b)`, for `b` across `[-1/2, 1/2]`.
pub fn coherent_surface(
    n_particles: usize,
    samples: usize,
    name: &str,
) -> CliResult<TableArtifact> {
    if samples < 2 {
        return usage("--samples must be at least 2");
    }
    let basis = basis_states::<f64>(n_particles).map_err(as_usage)?;
    let gens = build_generators(&basis);
    let eta = teardrop_core::eta_for::<f64>(n_particles);
    let bs: Vec<f64> = (0..samples)
        .map(|k| -0.5 + k as f64 / (samples - 1) as f64)
        .collect();
    let mut jobs = vec![];
    for sign in [1i64, -1] {
        for &b in &bs {
            jobs.push((sign, b));
        }
    }
    let rows: Vec<[f64; 3]> = jobs
        .par_iter()
        .map(|&(sign, b)| {
            let a = sign as f64 * teardrop_radius(b)?;
            let g = variational_ground_state(&VariationalSpec::new(a, b, 0.0)?, &basis)?;
            let x = eta * gens.kx.matrix.expectation(&g.state.amplitudes).re;
            let z = eta * gens.kz.matrix.expectation(&g.state.amplitudes).re;
            Ok([x, z, distance_to_cross_section(x, z)])
        })
        .collect::<CliResult<_>>()?;
    let max_distance = rows.iter().map(|r| r[2]).fold(0.0, f64::max);
    let mut t = TableArtifact::new(
        name,
        "coherent-surface",
        &["branch", "b", "x", "z", "distance"],
    )
    .meta("N", n_particles)
    .meta("eta", format_num(eta))
    .meta("max_distance", format_num(max_distance))
    .with_plot(2, &[3], Some(0));
    for (&(sign, b), r) in jobs.iter().zip(rows) {
        t.push(vec![
            Value::Int(sign),
            b.into(),
            r[0].into(),
            r[1].into(),
            r[2].into(),
        ]);
    }
    Ok(t)
}

/// The mean-field cross-section `x = +-r(z)`.
pub fn cross_section(samples: usize, name: &str) -> CliResult<TableArtifact> {
    let mut t = TableArtifact::new(name, "coherent-surface", &["z", "x_plus", "x_minus"])
        .with_plot(0, &[1, 2], None);
    for k in 0..samples {
        let z = -0.5 + k as f64 / (samples - 1) as f64;
        let r = teardrop_radius(z)?;
        t.push(vec![z.into(), r.into(), (-r).into()]);
    }
    Ok(t)
}

/// Parameters with a different particle number, validated as a usage error.
pub fn params_with_n(p: &Params, n: usize) -> CliResult<Params> {
    make_params(p.epsilon, p.v, n).map_err(as_usage)
}
