use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Nodes per panel of the adaptive rule.
pub(crate) const PANEL_NODES: usize = 64;
/// Maximum bisection depth of the adaptive rule.
const MAX_DEPTH: usize = 48;

type Rule = Arc<Vec<(f64, f64)>>;

fn cache() -> &'static Mutex<HashMap<usize, Rule>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Rule>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn compute_rule(n: usize) -> Vec<(f64, f64)> {
    let nf = n as f64;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Three-term recurrence for P_n and its derivative.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pm = if n == 0 { 0.0 } else { p0 };
            dp = nf * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.reverse();
    out
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending; cached per order.
pub fn gauss_legendre(n: usize) -> Arc<Vec<(f64, f64)>> {
    assert!(n >= 1, "Gauss-Legendre order must be positive");
    let mut guard = cache().lock().expect("quadrature cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(compute_rule(n)))
        .clone()
}

pub(crate) fn fixed_rule<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, rule: &[(f64, f64)]) -> T {
    let half = (b - a) * T::lit(0.5);
    let mid = (a + b) * T::lit(0.5);
    rule.iter()
        .map(|&(x, w)| T::lit(w) * f(mid + half * T::lit(x)))
        .sum::<T>()
        * half
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol` by recursive
/// bisection of fixed-order Gauss-Legendre panels.
pub fn integrate_adaptive<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, tol: T) -> Result<T> {
    if a == b {
        return Ok(T::zero());
    }
    let rule = gauss_legendre(PANEL_NODES);
    let whole = fixed_rule(f, a, b, &rule);
    // Panels whose correction is below rounding of the total are accepted.
    let floor = T::epsilon() * T::lit(64.0) * whole.abs().max(T::min_positive_value());
    refine(f, a, b, whole, tol, floor, 0, &rule)
}

#[allow(clippy::too_many_arguments)]
fn refine<T: Real, F: Fn(T) -> T>(
    f: &F,
    a: T,
    b: T,
    whole: T,
    tol: T,
    floor: T,
    depth: usize,
    rule: &[(f64, f64)],
) -> Result<T> {
    let m = (a + b) * T::lit(0.5);
    let left = fixed_rule(f, a, m, rule);
    let right = fixed_rule(f, m, b, rule);
    let both = left + right;
    if !both.is_finite() {
        return Err(Error::NoConvergence(
            "non-finite integrand in adaptive quadrature".into(),
        ));
    }
    if (both - whole).abs() <= tol.max(floor) {
        return Ok(both);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::NoConvergence(format!(
            "adaptive quadrature did not reach {tol:e} on [{a}, {b}]"
        )));
    }
    let half_tol = tol * T::lit(0.5);
    Ok(refine(f, a, m, left, half_tol, floor, depth + 1, rule)?
        + refine(f, m, b, right, half_tol, floor, depth + 1, rule)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rule_properties() {
        for n in [1, 2, 5, 16, 64, 200] {
            let r = gauss_legendre(n);
            let w: f64 = r.iter().map(|x| x.1).sum();
            assert_abs_diff_eq!(w, 2.0, epsilon = 1e-13);
            // Exact for polynomials of degree 2n - 1.
            let deg = 2 * n - 2;
            let got: f64 = r.iter().map(|&(x, w)| w * x.powi(deg as i32)).sum();
            assert_abs_diff_eq!(got, 2.0 / (deg as f64 + 1.0), epsilon = 1e-12);
        }
        assert_abs_diff_eq!(gauss_legendre(2)[1].0, 1.0 / 3f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let v = integrate_adaptive(&|x: f64| x.sqrt(), 0.0, 1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(v, 2.0 / 3.0, epsilon = 1e-11);
        let v = integrate_adaptive(&|x: f64| (1.0 - x * x).sqrt(), -1.0, 1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(v, std::f64::consts::FRAC_PI_2, epsilon = 1e-11);
    }
}
