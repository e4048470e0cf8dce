use crate::error::{domain, Error, Result};
use crate::model::{radius, radius_derivative, ModelParams};
use crate::scalar::Real;

use super::bloch::BlochPoint;
use super::flow::{mf_energy, mf_rhs};

/// Relative width of the band around `|eps| = sqrt(2)|v|` reported as degenerate.
const CRITICAL_BAND: f64 = 1e-9;
/// Roots closer than this to the tip are merged into it.
const TIP_MERGE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Elliptic,
    Saddle,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint<T> {
    pub location: BlochPoint<T>,
    /// `s_z`, the root of the fixed-point polynomial (or `-1/2` for the tip).
    pub s_z_root: T,
    pub stability: Stability,
    pub energy: T,
}

/// `9 v^2 s^2 - (3 v^2 - 2 eps^2) s + v^2/4 - eps^2`; its roots are the off-tip fixed points.
pub fn fixed_point_polynomial<T: Real>(s: T, params: &ModelParams<T>) -> T {
    let (e2, v2) = (params.epsilon * params.epsilon, params.v * params.v);
    T::lit(9.0) * v2 * s * s - (T::lit(3.0) * v2 - T::lit(2.0) * e2) * s + v2 * T::lit(0.25) - e2
}

fn polynomial_roots<T: Real>(eps: T, v: T) -> Vec<T> {
    let (e2, v2) = (eps * eps, v * v);
    let a = T::lit(9.0) * v2;
    let b = -(T::lit(3.0) * v2 - T::lit(2.0) * e2);
    let c = v2 * T::lit(0.25) - e2;
    if a == T::zero() {
        return if b == T::zero() { vec![] } else { vec![-c / b] };
    }
    // The discriminant factorises exactly as 4 eps^2 (eps^2 + 6 v^2).
    let sq = T::lit(2.0) * eps.abs() * (e2 + T::lit(6.0) * v2).sqrt();
    let qq = -T::lit(0.5) * (b + if b >= T::zero() { sq } else { -sq });
    if qq == T::zero() {
        return vec![T::zero()];
    }
    let mut roots = vec![qq / a, c / qq];
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots.dedup_by(|x, y| (*x - *y).abs() <= T::tol(1e-14));
    roots
}

fn tip_stability<T: Real>(params: &ModelParams<T>) -> Stability {
    let e = params.epsilon.abs();
    let crit = T::SQRT_2() * params.v.abs();
    let band = T::lit(CRITICAL_BAND) * e.max(crit).max(T::min_positive_value());
    if (e - crit).abs() <= band {
        Stability::Degenerate
    } else if e < crit {
        Stability::Saddle
    } else {
        Stability::Elliptic
    }
}

/// `d^2 r / dp^2`.
fn radius_second_derivative<T: Real>(p: T) -> T {
    let w = T::one() - T::lit(2.0) * p;
    (T::lit(6.0) * p - T::lit(5.0)) / (T::lit(2.0) * w * w.sqrt())
}

/// Classification from the Hessian of `H(p, q)` at an off-vertex fixed point.
fn classify<T: Real>(s: &BlochPoint<T>, params: &ModelParams<T>) -> Stability {
    let p = s.sz;
    let r = radius(p);
    let v = params.v;
    let (cq, sq) = (s.sx / r, s.sy / r);
    let hpp = v * radius_second_derivative(p) * cq;
    let hqq = -v * r * cq;
    let hpq = -v * radius_derivative(p) * sq;
    let det = hpp * hqq - hpq * hpq;
    let scale = (hpp * hpp + hqq * hqq + hpq * hpq).max(T::min_positive_value());
    if det.abs() <= T::tol(1e-12) * scale {
        Stability::Degenerate
    } else if det > T::zero() {
        Stability::Elliptic
    } else {
        Stability::Saddle
    }
}

/// All fixed points of the mean-field flow, sorted by energy.
pub fn fixed_points<T: Real>(params: &ModelParams<T>) -> Result<Vec<FixedPoint<T>>> {
    let (eps, v) = (params.epsilon, params.v);
    if eps == T::zero() && v == T::zero() {
        return domain("every point is fixed when eps = v = 0");
    }
    let half = T::lit(0.5);
    let tip = BlochPoint::tip();
    let mut out = vec![FixedPoint {
        location: tip,
        s_z_root: -half,
        stability: tip_stability(params),
        energy: mf_energy(&tip, params),
    }];
    let tol = T::tol(1e-12);
    for s in polynomial_roots(eps, v) {
        if !(s >= -half - tol && s <= half + tol) || (s + half).abs() <= T::lit(TIP_MERGE) {
            continue;
        }
        let s = s.max(-half).min(half);
        let r = radius(s);
        if r <= T::lit(1e-12) {
            // Top vertex; fixed only for v = 0, where the flow is a uniform rotation.
            let top = BlochPoint::unchecked(T::zero(), T::zero(), s);
            out.push(FixedPoint {
                location: top,
                s_z_root: s,
                stability: Stability::Elliptic,
                energy: mf_energy(&top, params),
            });
            continue;
        }
        // eps s_x = -(v/4)(1/2 + s)(2 - 12 s) fixes the sign of s_x; its magnitude is r.
        let signed = -v * (half + s) * (T::lit(2.0) - T::lit(12.0) * s) * eps;
        let signs: Vec<T> = if signed > T::zero() {
            vec![T::one()]
        } else if signed < T::zero() {
            vec![-T::one()]
        } else {
            vec![-T::one(), T::one()]
        };
        for sign in signs {
            let loc = BlochPoint::unchecked(sign * r, T::zero(), s);
            let rate = mf_rhs(&loc, params);
            let scale = eps.abs().max(v.abs());
            if rate.iter().any(|x| x.abs() > T::tol(1e-8) * scale) {
                return Err(Error::Internal(format!(
                    "spurious fixed-point root s_z = {s}"
                )));
            }
            out.push(FixedPoint {
                location: loc,
                s_z_root: s,
                stability: classify(&loc, params),
                energy: mf_energy(&loc, params),
            });
        }
    }
    out.sort_by(|a, b| {
        a.energy
            .partial_cmp(&b.energy)
            .unwrap()
            .then(a.location.sz.partial_cmp(&b.location.sz).unwrap())
    });
    Ok(out)
}

/// Lowest and highest fixed-point energies: the range of the classical energy.
pub fn energy_bounds<T: Real>(params: &ModelParams<T>) -> Result<(T, T)> {
    let fps = fixed_points(params)?;
    Ok((fps[0].energy, fps[fps.len() - 1].energy))
}
