//! Exact versus semiclassical spectra along a detuning sweep.

use rayon::prelude::*;

use teardrop_core::many_particle::tridiagonal_spectrum;
use teardrop_core::mean_field::energy_bounds;
use teardrop_core::semiclassics::quantize;
use teardrop_core::Params;

use crate::artifact::{format_num, TableArtifact};
use crate::error::CliResult;

/// Slack, in rescaled energy, for the fixed-point bound check.
const BOUND_TOL: f64 = 1e-8;

pub const COLUMNS: [&str; 10] = [
    "epsilon",
    "n",
    "exact",
    "semiclassical",
    "abs_error",
    "abs_error_rescaled",
    "mean_spacing",
    "bound_min",
    "bound_max",
    "within_bounds",
];

struct Row {
    exact: Vec<f64>,
    semiclassical: Vec<f64>,
    bounds: (f64, f64),
}

fn evaluate(p: &Params) -> CliResult<Row> {
    let exact = tridiagonal_spectrum(p)?;
    let semiclassical = quantize(p)?.energies();
    let bounds = if p.epsilon == 0.0 && p.v == 0.0 {
        (0.0, 0.0)
    } else {
        let (lo, hi) = energy_bounds(p)?;
        (lo / p.eta, hi / p.eta)
    };
    Ok(Row {
        exact,
        semiclassical,
        bounds,
    })
}

/// One row per detuning and level; all energies in many-particle units `E`.
///
/// `mean_spacing` is the exact spectral width over `N/2`; the bounds are the
/// extreme fixed-point energies divided by `eta`.
pub fn compare_spectra(params: &Params, eps: &[f64], name: &str) -> CliResult<TableArtifact> {
    let rows: Vec<Row> = eps
        .par_iter()
        .map(|&e| evaluate(&params.with_couplings(e, params.v)))
        .collect::<CliResult<_>>()?;
    let eta = params.eta;
    let mut t = TableArtifact::new(name, "compare", &COLUMNS)
        .meta("N", params.n_particles)
        .meta("v", format_num(params.v))
        .meta("eta", format_num(eta))
        .with_plot(0, &[2, 3], Some(1));
    let mut max_err: f64 = 0.0;
    let mut max_rel: f64 = 0.0;
    let mut outside = 0usize;
    for (&e, row) in eps.iter().zip(&rows) {
        let levels = row.exact.len();
        let spacing = (row.exact[levels - 1] - row.exact[0]) / (levels - 1) as f64;
        let (lo, hi) = row.bounds;
        let slack = BOUND_TOL / eta;
        for (n, (&x, &s)) in row.exact.iter().zip(&row.semiclassical).enumerate() {
            let err = (s - x).abs();
            max_err = max_err.max(err);
            if spacing > 0.0 {
                max_rel = max_rel.max(err / spacing);
            }
            let inside = x >= lo - slack && x <= hi + slack;
            outside += usize::from(!inside);
            t.push(vec![
                e.into(),
                n.into(),
                x.into(),
                s.into(),
                err.into(),
                (eta * err).into(),
                spacing.into(),
                lo.into(),
                hi.into(),
                usize::from(inside).into(),
            ]);
        }
    }
    t.push_meta("max_abs_error", format_num(max_err));
    t.push_meta("max_error_over_mean_spacing", format_num(max_rel));
    t.push_meta("levels_outside_bounds", outside);
    Ok(t)
}

/// Mean rescaled error over the middle half of the levels at one detuning.
pub fn mid_spectrum_mean_error(t: &TableArtifact, epsilon: f64) -> Option<f64> {
    let (ie, in_, ir) = (
        t.column_index("epsilon")?,
        t.column_index("n")?,
        t.column_index("abs_error_rescaled")?,
    );
    let rows: Vec<_> = t
        .rows
        .iter()
        .filter(|r| r[ie].as_f64() == Some(epsilon))
        .collect();
    let top = rows.len().checked_sub(1)? as f64;
    let mid: Vec<f64> = rows
        .iter()
        .filter(|r| {
            let n = r[in_].as_f64().unwrap_or(-1.0);
            n >= top / 4.0 && n <= 3.0 * top / 4.0
        })
        .filter_map(|r| r[ir].as_f64())
        .collect();
    (!mid.is_empty()).then(|| mid.iter().sum::<f64>() / mid.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use teardrop_core::make_params;

    #[test]
    fn decoupled_rows_are_exact() {
        let p = make_params(0.0, 0.0, 12).unwrap();
        let t = compare_spectra(&p, &[-1.0, 0.0, 2.5], "c").unwrap();
        assert_eq!(t.rows.len(), 3 * 7);
        let ie = t.column_index("abs_error").unwrap();
        assert!(t.rows.iter().all(|r| r[ie].as_f64().unwrap() <= 1e-9));
    }

    #[test]
    fn spectrum_inside_fixed_point_bounds() {
        let p = make_params(0.0, 1.0, 20).unwrap();
        let t = compare_spectra(&p, &[-2.0, 0.3, 1.0, 3.0], "c").unwrap();
        let iw = t.column_index("within_bounds").unwrap();
        assert!(t.rows.iter().all(|r| r[iw].as_f64() == Some(1.0)));
    }

    #[test]
    fn mid_error_helper() {
        let p = make_params(0.0, 1.0, 8).unwrap();
        let t = compare_spectra(&p, &[1.0], "c").unwrap();
        let m = mid_spectrum_mean_error(&t, 1.0).unwrap();
        assert!(m.is_finite() && m >= 0.0);
        assert!(mid_spectrum_mean_error(&t, 2.0).is_none());
    }
}
