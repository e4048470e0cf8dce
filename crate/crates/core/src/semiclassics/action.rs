use crate::error::Result;
use crate::model::ModelParams;
use crate::scalar::Real;

use super::quadrature::integrate_adaptive;
use super::turning::{clamp_energy, turning_points, Branch, TurningPoints};

/// Absolute tolerance of the action quadrature.
pub(crate) const ACTION_TOL: f64 = 1e-10;

/// Azimuth `q(p) = arccos((e - eps p) / (|v| r(p)))` on the orbit, from the factored
/// form of `v^2 r^2 - (e - eps p)^2` so that it stays accurate near the turning points.
pub(crate) fn orbit_angle<T: Real>(p: T, tp: &TurningPoints<T>, eps: T, v_abs: T) -> T {
    let two = T::lit(2.0);
    let gap =
        (two * v_abs * v_abs * (p - tp.p_zero) * (p - tp.p_minus) * (tp.p_plus - p)).max(T::zero());
    gap.sqrt().atan2(tp.energy - eps * p)
}

/// Map `theta in [-pi/2, pi/2]` onto `[p-, p+]` via `p = mid + half sin(theta)`.
pub(crate) struct SineMap<T> {
    pub mid: T,
    pub half: T,
}

impl<T: Real> SineMap<T> {
    pub fn new(tp: &TurningPoints<T>) -> Self {
        SineMap {
            mid: (tp.p_minus + tp.p_plus) * T::lit(0.5),
            half: (tp.p_plus - tp.p_minus) * T::lit(0.5),
        }
    }

    pub fn p(&self, theta: T) -> T {
        self.mid + self.half * theta.sin()
    }

    pub fn theta(&self, p: T) -> T {
        ((p - self.mid) / self.half)
            .max(-T::one())
            .min(T::one())
            .asin()
    }

    pub fn jacobian(&self, theta: T) -> T {
        self.half * theta.cos()
    }
}

/// `int_{p-}^{p} q(p') dp'` for `p` in `[p-, p+]`.
pub(crate) fn partial_angle_integral<T: Real>(
    p: T,
    tp: &TurningPoints<T>,
    params: &ModelParams<T>,
) -> Result<T> {
    if tp.p_plus <= tp.p_minus {
        return Ok(T::zero());
    }
    let (eps, v_abs) = (params.epsilon, params.v.abs());
    let map = SineMap::new(tp);
    let f = |t: T| orbit_angle(map.p(t), tp, eps, v_abs) * map.jacobian(t);
    integrate_adaptive(
        &f,
        -T::FRAC_PI_2(),
        map.theta(p),
        T::tol(ACTION_TOL) * T::lit(0.5),
    )
}

/// Area of `{H < e}` from the turning points.
pub(crate) fn action_from_turning_points<T: Real>(
    tp: &TurningPoints<T>,
    params: &ModelParams<T>,
) -> Result<T> {
    let half = T::lit(0.5);
    let tau = T::TAU();
    let inner = partial_angle_integral(tp.p_plus, tp, params)?;
    let mut s = tau * (tp.p_plus - tp.p_minus) - T::lit(2.0) * inner;
    if tp.branch_minus == Branch::OnUPlus {
        s = s + tau * (tp.p_minus + half);
    }
    if tp.branch_plus == Branch::OnUPlus {
        s = s + tau * (half - tp.p_plus);
    }
    Ok(s.max(T::zero()).min(tau))
}

/// Phase-space area `S(e)` enclosed by the orbit of rescaled energy `e`;
/// runs from 0 at the minimum energy to `2 pi` at the maximum.
pub fn action<T: Real>(e: T, params: &ModelParams<T>) -> Result<T> {
    let (e, lo, hi) = clamp_energy(e, params)?;
    let tau = T::TAU();
    if params.v == T::zero() {
        return Ok((tau * (e / params.epsilon.abs() + T::lit(0.5)))
            .max(T::zero())
            .min(tau));
    }
    if e <= lo {
        return Ok(T::zero());
    }
    if e >= hi {
        return Ok(tau);
    }
    action_from_turning_points(&turning_points(e, params)?, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mean_field::energy_bounds;
    use crate::model::make_params;
    use crate::semiclassics::period::period;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn endpoints_and_symmetry() {
        let p = make_params(0.0, 1.0, 2).unwrap();
        let (lo, hi) = energy_bounds(&p).unwrap();
        assert_eq!(action(lo, &p).unwrap(), 0.0);
        assert_eq!(action(hi, &p).unwrap(), TAU);
        assert_abs_diff_eq!(action(0.0, &p).unwrap(), PI, epsilon = 1e-10);
        for x in [0.1, 0.2, 0.4] {
            let s = action(x, &p).unwrap() + action(-x, &p).unwrap();
            assert_abs_diff_eq!(s, TAU, epsilon = 1e-10);
        }
    }

    #[test]
    fn pure_detuning_is_linear() {
        let p = make_params(1.3, 0.0, 2).unwrap();
        assert_abs_diff_eq!(
            action(0.2, &p).unwrap(),
            TAU * (0.2 / 1.3 + 0.5),
            epsilon = 1e-15
        );
        // Quadrature agrees with the analytic limit at tiny coupling.
        let weak = make_params(1.3, 1e-12, 2).unwrap();
        for e in [-0.5, -0.2, 0.0, 0.3, 0.6] {
            assert_abs_diff_eq!(
                action(e, &weak).unwrap(),
                action(e, &p).unwrap(),
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn all_four_branch_cases_and_continuity() {
        let mut seen = std::collections::HashSet::new();
        for &eps in &[0.0, 0.6, -0.6, 2.5, -2.5] {
            let params = make_params(eps, 1.0, 2).unwrap();
            let (lo, hi) = energy_bounds(&params).unwrap();
            let mut prev = 0.0;
            let mut prev_e = lo;
            let steps = 4000;
            for k in 1..steps {
                let e = lo + (hi - lo) * k as f64 / steps as f64;
                let tp = turning_points(e, &params).unwrap();
                seen.insert((tp.branch_minus, tp.branch_plus));
                let s = action(e, &params).unwrap();
                assert!(s >= prev - 1e-10, "non-monotone at eps={eps} e={e}");
                // Lipschitz bound from the period keeps jumps out.
                let t = period(0.5 * (e + prev_e), &params).unwrap();
                if t.is_finite() && t < 50.0 {
                    assert!(
                        s - prev <= 2.0 * t * (e - prev_e) + 1e-8,
                        "jump at eps={eps} e={e}"
                    );
                }
                prev = s;
                prev_e = e;
            }
        }
        assert_eq!(seen.len(), 4, "{seen:?}");
    }

    #[test]
    fn derivative_is_period() {
        for &(eps, e) in &[
            (0.5f64, 0.1f64),
            (0.5, -0.4),
            (2.0, -0.3),
            (-1.0, 0.2),
            (0.0, 0.3),
        ] {
            let params = make_params(eps, 1.0, 2).unwrap();
            let h = 1e-5;
            let ds =
                (action(e + h, &params).unwrap() - action(e - h, &params).unwrap()) / (2.0 * h);
            let t = period(e, &params).unwrap();
            assert!(((ds - t) / t).abs() < 1e-5, "eps={eps} e={e} dS={ds} T={t}");
        }
    }
}
