use crate::error::{domain, Result};
use crate::model::ModelParams;
use crate::scalar::Real;

use super::elliptic::elliptic_k;
use super::turning::{clamp_energy, energy_scale, turning_points, TurningPoints};

/// Energy distance from `-eps/2` treated as lying on the separatrix.
const SEPARATRIX_TOL: f64 = 1e-12;

pub(crate) fn period_from_turning_points<T: Real>(tp: &TurningPoints<T>, v_abs: T) -> Result<T> {
    let span = tp.p_plus - tp.p_zero;
    if span.is_nan() || span <= T::zero() {
        return Ok(T::infinity());
    }
    let m = ((tp.p_plus - tp.p_minus) / span).max(T::zero());
    let k = elliptic_k(m)?;
    Ok(T::lit(2.0) * T::SQRT_2() * k / (v_abs * span.sqrt()))
}

/// Period of the orbit with rescaled energy `e`. Infinite on the separatrix through the saddle.
pub fn period<T: Real>(e: T, params: &ModelParams<T>) -> Result<T> {
    let (eps, v_abs) = (params.epsilon, params.v.abs());
    if eps == T::zero() && v_abs == T::zero() {
        return domain("period undefined for eps = v = 0");
    }
    let (e, _, _) = clamp_energy(e, params)?;
    if v_abs == T::zero() {
        return Ok(T::TAU() / eps.abs());
    }
    let on_separatrix =
        (e + eps * T::lit(0.5)).abs() <= T::tol(SEPARATRIX_TOL) * energy_scale(params);
    let crit = T::SQRT_2() * v_abs;
    if on_separatrix && eps.abs() <= crit * (T::one() + T::lit(1e-9)) {
        return Ok(T::infinity());
    }
    period_from_turning_points(&turning_points(e, params)?, v_abs)
}

/// Density of states `dn/dE = T(e) / 2 pi` in levels per unit many-particle energy.
pub fn density_of_states<T: Real>(e: T, params: &ModelParams<T>) -> Result<T> {
    Ok(period(e, params)? / T::TAU())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mean_field::energy_bounds;
    use crate::model::{make_params, radius};
    use crate::semiclassics::quadrature::{fixed_rule, gauss_legendre};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn examples() {
        let p = make_params(2.0, 1.0, 2).unwrap();
        assert_relative_eq!(
            period(-1.0, &p).unwrap(),
            2f64.sqrt() * PI,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            density_of_states(-1.0, &p).unwrap(),
            0.5f64.sqrt(),
            max_relative = 1e-12
        );
        let q = make_params(0.0f64, 1.0, 2).unwrap();
        assert!(period(0.0, &q).unwrap().is_infinite());
        assert!(density_of_states(0.0, &q).unwrap().is_infinite());
        assert!(period(1e-6, &q).unwrap() > 10.0);
        assert_relative_eq!(
            period(0.3, &make_params(-2.0, 0.0, 2).unwrap()).unwrap(),
            PI
        );
    }

    #[test]
    fn fixed_point_limit_is_linearisation() {
        // Around the elliptic point of eps = 0, v = 1 the small-oscillation frequency is
        // sqrt(H_pp H_qq) with H_pp = v r'' and H_qq = -v r at p = 1/6, q = pi.
        let params = make_params(0.0, 1.0, 2).unwrap();
        let (lo, _) = energy_bounds(&params).unwrap();
        let p: f64 = 1.0 / 6.0;
        let rpp = (6.0 * p - 5.0) / (2.0 * (1.0 - 2.0 * p).powf(1.5));
        let omega = (-rpp * radius(p)).sqrt();
        assert_relative_eq!(
            period(lo, &params).unwrap(),
            2.0 * PI / omega,
            max_relative = 1e-6
        );
    }

    /// Direct quadrature of `2 int dp / sqrt((U+ - e)(e - U-))` with a fixed high-order rule.
    fn quadrature_period(e: f64, params: &ModelParams<f64>) -> f64 {
        let tp = turning_points(e, params).unwrap();
        let (eps, v) = (params.epsilon, params.v.abs());
        let mid = 0.5 * (tp.p_minus + tp.p_plus);
        let half = 0.5 * (tp.p_plus - tp.p_minus);
        let f = |t: f64| {
            let p = mid + half * t.sin();
            let g = v * v * radius(p).powi(2) - (e - eps * p).powi(2);
            2.0 * half * t.cos() / g.sqrt()
        };
        fixed_rule(&f, -PI / 2.0, PI / 2.0, &gauss_legendre(400))
    }

    #[test]
    fn elliptic_formula_matches_quadrature() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut uniform = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let eps = -3.0 + 6.0 * uniform();
            let v = 0.2 + 1.8 * uniform();
            let params = make_params(eps, v, 2).unwrap();
            let (lo, hi) = energy_bounds(&params).unwrap();
            let e = lo + (hi - lo) * (0.02 + 0.96 * uniform());
            if (e + eps / 2.0).abs() < 1e-3 * (hi - lo) {
                continue;
            }
            let t = period(e, &params).unwrap();
            let q = quadrature_period(e, &params);
            assert_relative_eq!(t, q, max_relative = 1e-8);
        }
    }
}
