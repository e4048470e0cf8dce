use crate::error::{domain, Error, Result};
use crate::mean_field::energy_bounds;
use crate::model::{radius, ModelParams};
use crate::scalar::Real;

use super::cubic::real_cubic_roots;
use super::potential::potential_curves;

/// Accepted excursion of `e` outside the classical energy range.
const RANGE_TOL: f64 = 1e-10;
/// Accepted excursion of a turning point outside `[-1/2, 1/2]`.
const ROOT_TOL: f64 = 1e-7;
/// Below this ratio `2 v^2 / (v^2 + eps^2)` the outer root is removed by deflation.
const WEAK_COUPLING: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    OnUMinus,
    OnUPlus,
}

/// Roots of the turning-point cubic at energy `e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoints<T> {
    /// The root at or below `-1/2`; minus infinity when `v = 0`.
    pub p_zero: T,
    pub p_minus: T,
    pub p_plus: T,
    pub branch_minus: Branch,
    pub branch_plus: Branch,
    pub energy: T,
}

/// `2v^2 p^3 + (v^2 + eps^2) p^2 - (v^2/2 + 2 eps e) p - v^2/4 + e^2`, which equals `(e - U-)(e - U+)`.
pub fn turning_point_polynomial<T: Real>(p: T, e: T, params: &ModelParams<T>) -> T {
    let c = coefficients(e, params.epsilon, params.v);
    ((c[0] * p + c[1]) * p + c[2]) * p + c[3]
}

fn coefficients<T: Real>(e: T, eps: T, v: T) -> [T; 4] {
    let v2 = v * v;
    let two = T::lit(2.0);
    [
        two * v2,
        v2 + eps * eps,
        -(v2 * T::lit(0.5) + two * eps * e),
        -v2 * T::lit(0.25) + e * e,
    ]
}

pub(crate) fn energy_scale<T: Real>(params: &ModelParams<T>) -> T {
    T::one().max(params.epsilon.abs()).max(params.v.abs())
}

/// Check `e` against the classical energy range and clamp it in.
pub(crate) fn clamp_energy<T: Real>(e: T, params: &ModelParams<T>) -> Result<(T, T, T)> {
    let (lo, hi) = energy_bounds(params)?;
    let tol = T::tol(RANGE_TOL) * energy_scale(params);
    if !(e >= lo - tol && e <= hi + tol) {
        return domain(format!(
            "energy {e} outside the classical range [{lo}, {hi}]"
        ));
    }
    Ok((e.max(lo).min(hi), lo, hi))
}

fn classify<T: Real>(p: T, e: T, params: &ModelParams<T>) -> Branch {
    let (lower, upper) = potential_curves(params).pair(p);
    if (e - upper).abs() < (e - lower).abs() {
        Branch::OnUPlus
    } else {
        Branch::OnUMinus
    }
}

fn into_domain<T: Real>(p: T) -> Result<T> {
    let half = T::lit(0.5);
    let tol = T::lit(ROOT_TOL);
    if !(p >= -half - tol && p <= half + tol) {
        return Err(Error::Internal(format!(
            "turning point {p} outside [-1/2, 1/2]"
        )));
    }
    Ok(p.max(-half).min(half))
}

/// Roots when `v^2` is negligible against `eps^2`. The physical pair is split by
/// only `~|v/eps|`, below what the cubic resolves, so each root is found from
/// `eps p -+ |v| r(p) = e` by fixed-point iteration; the outer root follows from
/// the sum of the roots.
fn weak_coupling_roots<T: Real>(e: T, eps: T, v_abs: T, c: &[T; 4]) -> [T; 3] {
    let half = T::lit(0.5);
    let solve = |sign: T| {
        let mut p = (e / eps).max(-half).min(half);
        for _ in 0..200 {
            let next = ((e - sign * v_abs * radius(p)) / eps).max(-half).min(half);
            if (next - p).abs() <= T::epsilon() {
                p = next;
                break;
            }
            p = next;
        }
        p
    };
    let (x, y) = (solve(T::one()), solve(-T::one()));
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    [-c[1] / c[0] - lo - hi, lo, hi]
}

/// Turning points of the orbit with rescaled energy `e`.
pub fn turning_points<T: Real>(e: T, params: &ModelParams<T>) -> Result<TurningPoints<T>> {
    let (eps, v) = (params.epsilon, params.v);
    if eps == T::zero() && v == T::zero() {
        return domain("turning points undefined for eps = v = 0");
    }
    let (e, _, _) = clamp_energy(e, params)?;
    let half = T::lit(0.5);
    if v == T::zero() {
        let p = (e / eps).max(-half).min(half);
        return Ok(TurningPoints {
            p_zero: T::neg_infinity(),
            p_minus: p,
            p_plus: p,
            branch_minus: Branch::OnUMinus,
            branch_plus: Branch::OnUPlus,
            energy: e,
        });
    }
    let v2 = v * v;
    let c = coefficients(e, eps, v);
    let mut roots = if (e + eps * half).abs() <= T::epsilon() * energy_scale(params) {
        // Separatrix energy: (p + 1/2)^2 (2 v^2 p - v^2 + eps^2).
        let third = (v2 - eps * eps) / (T::lit(2.0) * v2);
        let mut r = [-half, -half, third];
        r.sort_by(|x, y| x.partial_cmp(y).unwrap());
        r
    } else {
        if c[0] < T::lit(WEAK_COUPLING) * c[1] {
            weak_coupling_roots(e, eps, v.abs(), &c)
        } else {
            real_cubic_roots(c[0], c[1], c[2], c[3])?
        }
    };
    // Roots are only known to ~sqrt(eps) at a double root; pull the physical pair into the domain.
    roots[1] = into_domain(roots[1])?;
    roots[2] = into_domain(roots[2])?;
    if roots[0] > -half {
        if roots[0] > -half + T::lit(ROOT_TOL) {
            return Err(Error::Internal(format!(
                "outer turning point {} lies inside the domain",
                roots[0]
            )));
        }
        roots[0] = -half;
    }
    Ok(TurningPoints {
        p_zero: roots[0],
        p_minus: roots[1],
        p_plus: roots[2],
        branch_minus: classify(roots[1], e, params),
        branch_plus: classify(roots[2], e, params),
        energy: e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_params;
    use approx::assert_abs_diff_eq;

    fn check(tp: &TurningPoints<f64>, want: [f64; 3], tol: f64) {
        assert_abs_diff_eq!(tp.p_zero, want[0], epsilon = tol);
        assert_abs_diff_eq!(tp.p_minus, want[1], epsilon = tol);
        assert_abs_diff_eq!(tp.p_plus, want[2], epsilon = tol);
    }

    #[test]
    fn examples() {
        let p = make_params(0.0, 1.0, 2).unwrap();
        check(&turning_points(0.0, &p).unwrap(), [-0.5, -0.5, 0.5], 1e-15);
        let p2 = make_params(2.0, 1.0, 2).unwrap();
        check(
            &turning_points(-1.0, &p2).unwrap(),
            [-1.5, -0.5, -0.5],
            1e-15,
        );
        let top = 2.0 * 6f64.sqrt() / 9.0;
        check(
            &turning_points(top, &p).unwrap(),
            [-5.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0],
            1e-7,
        );
        assert!(turning_points(top + 1e-6, &p).is_err());
        assert!(turning_points(top + 1e-12, &p).is_ok());
    }

    #[test]
    fn roots_lie_on_the_tagged_curve() {
        for &(eps, v) in &[
            (0.0, 1.0),
            (0.7, 1.0),
            (-0.9, 1.3),
            (2.5, 1.0),
            (-3.0, 0.5),
            (1.0, -1.0),
            (1.0, 1e-5),
        ] {
            let params = make_params(eps, v, 2).unwrap();
            let u = potential_curves(&params);
            let (lo, hi) = energy_bounds(&params).unwrap();
            for k in 0..=50 {
                let e = lo + (hi - lo) * k as f64 / 50.0;
                let tp = turning_points(e, &params).unwrap();
                assert!(
                    tp.p_zero <= -0.5
                        && tp.p_minus >= -0.5
                        && tp.p_minus <= tp.p_plus
                        && tp.p_plus <= 0.5
                );
                for (p, b) in [(tp.p_minus, tp.branch_minus), (tp.p_plus, tp.branch_plus)] {
                    let (l, h) = u.pair(p);
                    let val = if b == Branch::OnUPlus { h } else { l };
                    assert!((val - e).abs() < 1e-10, "eps={eps} v={v} e={e} p={p} {val}");
                }
            }
        }
    }

    #[test]
    fn weak_coupling_pair_near_horizontal_circle() {
        let params = make_params(1.0, 1e-9, 2).unwrap();
        let tp = turning_points(0.1, &params).unwrap();
        assert_abs_diff_eq!(tp.p_minus, 0.1, epsilon = 1e-8);
        assert_abs_diff_eq!(tp.p_plus, 0.1, epsilon = 1e-8);
        assert!(tp.p_minus < tp.p_plus);
    }
}
