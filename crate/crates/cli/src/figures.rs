//! Figure presets: the numeric data behind each figure, with overridable defaults.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use teardrop_core::many_particle::tridiagonal_spectrum;
use teardrop_core::mean_field::{
    energy_bounds, fixed_points, from_canonical, mf_energy_canonical, CanonicalPoint,
};
use teardrop_core::semiclassics::{
    density_of_states, integrate_adaptive, period, potential_curves, turning_points,
};
use teardrop_core::{make_params, teardrop_radius, Params};

use crate::artifact::{format_num, TableArtifact, Value};
use crate::commands::{
    coherent_surface, cross_section, kx_spectrum, mf_trajectory, mp_trajectory, sweep_spectrum,
    with_params, wkb_table,
};
use crate::compare::{compare_spectra, mid_spectrum_mean_error};
use crate::config::{Init, Sweep};
use crate::error::{as_usage, usage, CliResult};

pub const FIGURE_IDS: [&str; 9] = [
    "fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9",
];

/// Histogram bins for the density-of-states figure.
pub const DOS_BINS: usize = 40;

/// User overrides of the preset parameters; `None` keeps the preset.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub n: Option<usize>,
    pub epsilon: Option<f64>,
    pub v: Option<f64>,
    pub sweep: Option<Sweep>,
    pub t_max: Option<f64>,
    pub samples: Option<usize>,
}

impl Overrides {
    fn ns(&self, preset: &[usize]) -> Vec<usize> {
        self.n.map_or_else(|| preset.to_vec(), |n| vec![n])
    }

    fn epsilons(&self, preset: &[f64]) -> Vec<f64> {
        self.epsilon.map_or_else(|| preset.to_vec(), |e| vec![e])
    }

    fn v(&self) -> f64 {
        self.v.unwrap_or(1.0)
    }

    fn sweep_values(&self) -> Vec<f64> {
        self.sweep
            .unwrap_or(Sweep {
                start: -4.0,
                end: 4.0,
                steps: 81,
            })
            .values()
    }

    fn params(&self, epsilon: f64, n: usize) -> CliResult<Params> {
        make_params(epsilon, self.v(), n).map_err(as_usage)
    }
}

fn tag(x: f64) -> String {
    format!("{x}")
}

pub fn figure(id: &str, o: &Overrides) -> CliResult<Vec<TableArtifact>> {
    let mut tables = match id {
        "fig1" => fig1(o),
        "fig2" => fig2(o),
        "fig3" => fig3(o),
        "fig4" => fig4(o),
        "fig5" => fig5(o),
        "fig6" => fig6(o),
        "fig7" => fig7(o),
        "fig8" => fig8(o),
        "fig9" => fig9(o),
        _ => usage(format!(
            "unknown figure id {id:?}; expected one of {}",
            FIGURE_IDS.join(", ")
        )),
    }?;
    for t in &mut tables {
        t.metadata[0].1 = format!("figure {id}");
    }
    Ok(tables)
}

/// Eigenvalues of `K_x` and `K_y`.
fn fig1(o: &Overrides) -> CliResult<Vec<TableArtifact>> {
    let n = o.n.unwrap_or(50);
    Ok(vec![kx_spectrum(n, &format!("fig1_n{n}"))?])
}

/// Spectrum versus detuning, plus the fixed-point energies that bound it.
fn fig2(o: &Overrides) -> CliResult<Vec<TableArtifact>> {
    let eps = o.sweep_values();
    let mut out = vec![];
    for n in o.ns(&[10, 50]) {
        let p = o.params(0.0, n)?;
        out.push(sweep_spectrum(&p, &eps, &format!("fig2_n{n}"))?);
    }
    let mut fp = TableArtifact::new(
        "fig2_fixed_points",
        "fixed-points",
        &["epsilon", "s_z", "stability", "energy_rescaled"],
    )
    .meta("v", format_num(o.v()))
    .with_plot(0, &[3], None);
    for &e in &eps {
        let p = o.params(e, 2)?;
        if e == 0.0 && p.v == 0.0 {
            continue;
        }
        for f in fixed_points(&p)? {
            fp.push(vec![
                e.into(),
                f.location.sz.into(),
                format!("{:?}", f.stability).to_lowercase().as_str().into(),
                f.energy.into(),
            ]);
        }
    }
    out.push(fp);
    Ok(out)
}

/// Starting points of the trajectory set: a grid in `(p, q)` on the surface.
fn orbit_starts() -> CliResult<Vec<Init>> {
    let mut out = vec![];
    for q in [0.0, PI] {
        for p in [-0.45, -0.3, -0.15, 0.0, 0.15, 0.3, 0.45] {
            let s = from_canonical(&CanonicalPoint::new(p, q)?);
            out.push(Init::Bloch(s.sx, s.sy, s.sz));
        }
    }
    Ok(out)
}

/// Mean-field trajectories on the surface and their `s_z(t)`.
fn fig3(o: &Overrides) -> CliResult<Vec<TableArtifact>> {
    let t_max = o.t_max.unwrap_or(20.0);
    let samples = o.samples.unwrap_or(401);
    let starts = orbit_starts()?;
    let mut out = vec![];
    for eps in o.epsilons(&[0.0, 1.0, 2.0]) {
        let p = o.params(eps, 2)?;
        let trajs: Vec<TableArtifact> = starts
            .par_iter()
            .map(|init| mf_trajectory(&p, init, t_max, samples, "orbit"))
            .collect::<CliResult<_>>()?;
        let base = format!("fig3_eps{}", tag(eps));
        let mut full = TableArtifact::new(
            format!("{base}_trajectories"),
            "mf-trajectory",
            &["orbit", "t", "s_x", "s_y", "s_z"],
        )
        .meta("epsilon", format_num(eps))
        .meta("v", format_num(p.v))
        .with_plot(2, &[4], Some(0));
        let mut sz = TableArtifact::new(
            format!("{base}_sz"),
            "mf-trajectory",
            &["orbit", "t", "s_z"],
        )
        .meta("epsilon", format_num(eps))
        .meta("v", format_num(p.v))
        .with_plot(1, &[2], Some(0));
        for (k, (init, tr)) in starts.iter().zip(&trajs).enumerate() {
            full.push_meta(&format!("orbit_{k}"), init.label());
            for row in &tr.rows {
                full.push(vec![
                    k.into(),
                    row[0].clone(),
                    row[1].clone(),
                    row[2].clone(),
                    row[3].clone(),
                ]);
                sz.push(vec![k.into(), row[0].clone(), row[3].clone()]);
            }
        }
        out.push(full);
        out.push(sz);
    }
    Ok(out)
}

/// Mean-field versus rescaled many-particle dynamics.
fn fig4(o: &Overrides) -> CliResult<Vec<TableArtifact>> {
    let t_max = o.t_max.unwrap_or(20.0);
    let samples = o.samples.unwrap_or(401);
    let ns = o.ns(&[20, 100, 500]);
    let cases = [
        (1.0, Init::GroundKx),
        (1.0, Init::GroundMinusKx),
        (0.0, Init::GroundMinusKz),
    ];
    let mut out = vec![];
    for (eps, init) in cases {
        let eps = o.epsilon.unwrap_or(eps);
        let p = o.params(eps, ns[0])?;
        let mf = mf_trajectory(&p, &init, t_max, samples, "mf")?;
        let mps: Vec<TableArtifact> = ns
            .par_iter()
            .map(|&n| mp_trajectory(&o.params(eps, n)?, &init, t_max, samples, "mp"))
            .collect::<CliResult<_>>()?;
        let mut cols = vec![
            "t".to_string(),
            "mf_s_x".into(),
            "mf_s_y".into(),
            "mf_s_z".into(),
        ];
        for n in &ns {
            for c in ["s_x", "s_y", "s_z"] {
                cols.push(format!("n{n}_{c}"));
            }
        }
        let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
        let ys: Vec<usize> = (0..ns.len() + 1).map(|k| 3 + 3 * k).collect();
        let mut t = TableArtifact::new(
            format!("fig4_eps{}_{}", tag(eps), init.label()),
            "mp-trajectory",
            &col_refs,
        )
        .meta("epsilon", format_num(eps))
        .meta("v", format_num(p.v))
        .meta("init", init.label())
        .with_plot(0, &ys, None);
        for (i, row) in mf.rows.iter().enumerate() {
            let mut r: Vec<Value> = row[..4].to_vec();
            for mp in &mps {
                r.extend_from_slice(&mp.rows[i][1..4]);
            }
            t.push(r);
        }
        out.push(t);
    }
    Ok(out)
}

/// Rescaled moments of the variational states against the teardrop cross-section.
fn fig5(o: &Overrides) -> CliResult<Vec<TableArtifact>> {
    let samples = o.samples.unwrap_or(101);
    let mut out = vec![];
    for n in o.ns(&[2, 4, 10, 100]) {
        out.push(coherent_surface(n, samples, &format!("fig5_n{n}"))?);
    }
    out.push(cross_section(201, "fig5_cross_section")?);
    Ok(out)
}

/// Energy landscape over `(q, p)`, the potential curves and one highlighted orbit.
fn fig6(o: &Overrides) -> CliResult<Vec<TableArtifact>> {
    const GRID: usize = 101;
    let mut out = vec![];
    for eps in o.epsilons(&[0.0, 2.0]) {
        let p = o.params(eps, 2)?;
        let base = format!("fig6_eps{}", tag(eps));

        let mut portrait = with_params(
            TableArtifact::new(format!("{base}_portrait"), "figure", &["q", "p", "energy"]),
            &p,
        )
        .with_plot(0, &[2], Some(1));
        for i in 0..GRID {
            let s = -0.5 + i as f64 / (GRID - 1) as f64;
            for j in 0..GRID {
                let q = TAU * j as f64 / (GRID - 1) as f64;
                let c = CanonicalPoint { p: s, q };
                portrait.push(vec![q.into(), s.into(), mf_energy_canonical(&c, &p).into()]);
            }
        }

        let curves = potential_curves(&p);
        let mut pot = with_params(
            TableArtifact::new(
                format!("{base}_potentials"),
                "figure",
                &["p", "u_minus", "u_plus"],
            ),
            &p,
        )
        .with_plot(0, &[1, 2], None);
        for i in 0..201 {
            let s = -0.5 + i as f64 / 200.0;
            pot.push(vec![
                s.into(),
                curves.lower(s)?.into(),
                curves.upper(s)?.into(),
            ]);
        }

        let (lo, hi) = energy_bounds(&p)?;
        let e = lo + 0.3 * (hi - lo);
        let tp = turning_points(e, &p)?;
        let mut orbit = with_params(
            TableArtifact::new(
                format!("{base}_orbit"),
                "figure",
                &["p", "q_upper", "q_lower"],
            ),
            &p,
        )
        .meta("energy_rescaled", format_num(e))
        .with_plot(0, &[1, 2], None);
        for i in 0..=200 {
            let s = tp.p_minus + (tp.p_plus - tp.p_minus) * i as f64 / 200.0;
            let vr = p.v * teardrop_radius(s)?;
            let q = if vr == 0.0 {
                0.0
            } else {
                ((e - eps * s) / vr).clamp(-1.0, 1.0).acos()
            };
            orbit.push(vec![s.into(), q.into(), (TAU - q).into()]);
        }
        out.extend([portrait, pot, orbit]);
    }
    Ok(out)
}

/// Exact versus semiclassical levels along the detuning sweep.
fn fig7(o: &Overrides) -> CliResult<Vec<TableArtifact>> {
    let eps = o.sweep_values();
    let mut out = vec![];
    for n in o.ns(&[4, 20]) {
        let p = o.params(0.0, n)?;
        let mut t = compare_spectra(&p, &eps, &format!("fig7_n{n}"))?;
        let mids: Vec<f64> = eps
            .iter()
            .filter_map(|&e| mid_spectrum_mean_error(&t, e))
            .collect();
        let mean = mids.iter().sum::<f64>() / mids.len().max(1) as f64;
        t.push_meta("mid_spectrum_mean_error_rescaled", format_num(mean));
        out.push(t);
    }
    Ok(out)
}

/// Bin average of `T(eta E) / 2 pi` over `[a, b]`, or NaN if the quadrature fails.
fn analytic_bin_average(p: &Params, bounds: (f64, f64), a: f64, b: f64) -> f64 {
    let dos =
        |big_e: f64| period((p.eta * big_e).clamp(bounds.0, bounds.1), p).unwrap_or(f64::NAN) / TAU;
    let w = b - a;
    let sep = -p.epsilon / (2.0 * p.eta);
    let near = |x: f64| (x - sep).abs() <= 1e-9 * w;
    let mut edges = vec![a];
    if sep > a && sep < b && !near(a) && !near(b) {
        edges.push(sep);
    }
    edges.push(b);
    let mut total = 0.0;
    for seg in edges.windows(2) {
        let (x0, x1) = (seg[0], seg[1]);
        // The period diverges logarithmically at the separatrix; with
        // x = sep + (far - sep) s^2 the integrand vanishes there instead.
        let part = if near(x0) || near(x1) {
            let (anchor, far) = if near(x0) { (x0, x1) } else { (x1, x0) };
            let d = far - anchor;
            let g = |s: f64| {
                let y = 2.0 * d.abs() * s * dos(anchor + d * s * s);
                if y.is_finite() {
                    y
                } else {
                    0.0
                }
            };
            integrate_with_fallback(&g, 0.0, 1.0, w)
        } else {
            integrate_with_fallback(&dos, x0, x1, w)
        };
        match part {
            Some(x) if x.is_finite() => total += x,
            _ => return f64::NAN,
        }
    }
    total / w
}

fn integrate_with_fallback<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, scale: f64) -> Option<f64> {
    [1e-9, 1e-6]
        .iter()
        .find_map(|&rel| integrate_adaptive(f, a, b, rel * scale).ok())
}

/// Normalised histogram of the exact spectrum against the semiclassical density of states.
fn fig8(o: &Overrides) -> CliResult<Vec<TableArtifact>> {
    let n = o.n.unwrap_or(10_000);
    let mut out = vec![];
    for eps in o.epsilons(&[0.0, 1.0, 2.0, 5.0]) {
        let p = o.params(eps, n)?;
        let exact = tridiagonal_spectrum(&p)?;
        let bounds = energy_bounds(&p)?;
        let (lo, hi) = (exact[0], exact[exact.len() - 1]);
        let width = (hi - lo) / DOS_BINS as f64;
        let mut counts = vec![0usize; DOS_BINS];
        for &e in &exact {
            counts[(((e - lo) / width) as usize).min(DOS_BINS - 1)] += 1;
        }
        let analytic: Vec<(f64, f64)> = (0..DOS_BINS)
            .into_par_iter()
            .map(|k| {
                let a = lo + k as f64 * width;
                let centre = a + 0.5 * width;
                let at_centre = density_of_states((p.eta * centre).clamp(bounds.0, bounds.1), &p)
                    .unwrap_or(f64::NAN);
                (analytic_bin_average(&p, bounds, a, a + width), at_centre)
            })
            .collect();
        let base = format!("fig8_eps{}", tag(eps));
        let mut t = with_params(
            TableArtifact::new(
                base.clone(),
                "figure",
                &[
                    "bin",
                    "energy_lo",
                    "energy_hi",
                    "energy_center",
                    "count",
                    "histogram",
                    "analytic_bin_average",
                    "analytic_center",
                ],
            ),
            &p,
        )
        .meta("bins", DOS_BINS)
        .meta("separatrix_energy", format_num(-eps / (2.0 * p.eta)))
        .with_plot(3, &[5, 6], None);
        for (k, (&c, &(avg, centre))) in counts.iter().zip(&analytic).enumerate() {
            let a = lo + k as f64 * width;
            t.push(vec![
                k.into(),
                a.into(),
                (a + width).into(),
                (a + 0.5 * width).into(),
                c.into(),
                (c as f64 / width).into(),
                avg.into(),
                centre.into(),
            ]);
        }
        let mut curve = with_params(
            TableArtifact::new(
                format!("{base}_curve"),
                "dos",
                &["energy", "density_of_states"],
            ),
            &p,
        )
        .with_plot(0, &[1], None);
        const CURVE: usize = 400;
        let es: Vec<f64> = (0..CURVE)
            .map(|k| lo + (hi - lo) * (k as f64 + 0.5) / CURVE as f64)
            .collect();
        let ds: Vec<f64> = es
            .par_iter()
            .map(|&e| {
                density_of_states((p.eta * e).clamp(bounds.0, bounds.1), &p).unwrap_or(f64::NAN)
            })
            .collect();
        for (e, d) in es.into_iter().zip(ds) {
            curve.push(vec![e.into(), d.into()]);
        }
        out.extend([t, curve]);
    }
    Ok(out)
}

/// Exact eigenvectors against the WKB envelope.
fn fig9(o: &Overrides) -> CliResult<Vec<TableArtifact>> {
    let n = o.n.unwrap_or(40);
    let eps = o.epsilon.unwrap_or(0.5);
    let p = o.params(eps, n)?;
    let mut out = vec![];
    for level in [1usize, 3, 10] {
        if level < p.dimension() {
            out.push(wkb_table(&p, level, &format!("fig9_level{level}"))?);
        }
    }
    Ok(out)
}
