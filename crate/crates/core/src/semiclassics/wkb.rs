use crate::error::{Error, Result};
use crate::model::{basis_states, radius, ModelParams};
use crate::scalar::Real;

use super::action::partial_angle_integral;
use super::period::period_from_turning_points;
use super::quadrature::{fixed_rule, gauss_legendre, PANEL_NODES};
use super::quantize::quantize_level;
use super::turning::{turning_points, Branch, TurningPoints};

/// Half-width of the band around each turning point, in units of `eta`,
/// inside which amplitudes are flagged unreliable.
pub const GUARD_BAND: f64 = 2.0;

/// Semiclassical envelope `|psi(eta m)|` of one eigenvector on the `K_z` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WKBState<T> {
    pub level: usize,
    /// Rescaled energy of the level.
    pub energy_mf: T,
    /// `m` values of the grid, ascending.
    pub grid: Vec<T>,
    /// Non-negative amplitudes with unit Euclidean norm.
    pub amplitudes: Vec<T>,
    /// First and last grid index strictly inside the classically allowed interval.
    pub allowed: Option<(usize, usize)>,
    /// Grid points within the guard band of a turning point.
    pub unreliable: Vec<bool>,
}

struct Envelope<'a, T> {
    tp: &'a TurningPoints<T>,
    params: &'a ModelParams<T>,
    period: T,
    v_abs: T,
}

impl<T: Real> Envelope<'_, T> {
    /// `|v^2 r^2 - (e - eps p)^2|` from the factored cubic.
    fn gap(&self, p: T) -> T {
        let tp = self.tp;
        (T::lit(2.0)
            * self.v_abs
            * self.v_abs
            * (p - tp.p_zero)
            * (p - tp.p_minus)
            * (tp.p_plus - p))
            .abs()
    }

    /// Classical probability density `1 / (2 T sqrt(gap))`.
    fn weight(&self, p: T) -> T {
        T::one() / (T::lit(2.0) * self.period * self.gap(p).sqrt())
    }

    /// `arccosh |(e - eps p) / (|v| r(p))|` in the forbidden region.
    fn kappa(&self, p: T) -> T {
        let r = radius(p);
        if r == T::zero() {
            return T::infinity();
        }
        let num = (self.tp.energy - self.params.epsilon * p).abs();
        ((num + self.gap(p).sqrt()) / (self.v_abs * r))
            .ln()
            .max(T::zero())
    }

    fn squared(&self, p: T) -> Result<T> {
        let tp = self.tp;
        let eta = self.params.eta;
        if p > tp.p_minus && p < tp.p_plus {
            let inner = partial_angle_integral(p, tp, self.params)?;
            let phase = match tp.branch_minus {
                Branch::OnUMinus => T::PI() * (p - tp.p_minus) - inner,
                Branch::OnUPlus => inner,
            };
            let c = (phase / eta - T::FRAC_PI_4()).cos();
            Ok(T::lit(2.0) * self.weight(p) * c * c)
        } else {
            let pt = if p <= tp.p_minus {
                tp.p_minus
            } else {
                tp.p_plus
            };
            let len = p - pt;
            let rule = gauss_legendre(PANEL_NODES);
            let integrand = |s: T| self.kappa(pt + len * s * s) * T::lit(2.0) * len.abs() * s;
            let decay = fixed_rule(&integrand, T::zero(), T::one(), &rule);
            Ok(T::lit(0.5) * self.weight(p) * (-T::lit(2.0) * decay / eta).exp())
        }
    }
}

/// WKB envelope of eigenvector `n`, evaluated at the quantised level energy.
pub fn wkb_state<T: Real>(n: usize, params: &ModelParams<T>) -> Result<WKBState<T>> {
    let level = quantize_level(n, params)?;
    let tp = turning_points(level.energy_mf, params)?;
    let v_abs = params.v.abs();
    let period = if v_abs == T::zero() {
        T::infinity()
    } else {
        period_from_turning_points(&tp, v_abs)?
    };
    if !period.is_finite() {
        return Err(Error::Domain(format!(
            "no WKB envelope for level {n}: orbit period is not finite"
        )));
    }
    let env = Envelope {
        tp: &tp,
        params,
        period,
        v_abs,
    };
    let basis = basis_states::<T>(params.n_particles)?;
    let eta = params.eta;
    let band = T::lit(GUARD_BAND) * eta;
    let mut squared = Vec::with_capacity(basis.dimension());
    let mut unreliable = Vec::with_capacity(basis.dimension());
    let mut allowed: Option<(usize, usize)> = None;
    for (k, &m) in basis.m_values.iter().enumerate() {
        let p = eta * m;
        let mut val = env.squared(p)?;
        if !val.is_finite() {
            // Exactly on a turning point: step a quarter grid spacing into the allowed region.
            let toward = if (p - tp.p_minus).abs() <= (p - tp.p_plus).abs() {
                T::one()
            } else {
                -T::one()
            };
            val = env.squared(p + toward * eta * T::lit(0.25))?;
        }
        squared.push(val.max(T::zero()));
        unreliable.push((p - tp.p_minus).abs() < band || (p - tp.p_plus).abs() < band);
        if p > tp.p_minus && p < tp.p_plus {
            allowed = Some(allowed.map_or((k, k), |(a, _)| (a, k)));
        }
    }
    let norm = squared.iter().copied().sum::<T>().sqrt();
    if !(norm > T::zero() && norm.is_finite()) {
        return Err(Error::Internal(format!(
            "WKB envelope for level {n} cannot be normalised"
        )));
    }
    Ok(WKBState {
        level: n,
        energy_mf: level.energy_mf,
        grid: basis.m_values,
        amplitudes: squared.into_iter().map(|x| x.sqrt() / norm).collect(),
        allowed,
        unreliable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::many_particle::hamiltonian_tridiagonal;
    use crate::model::make_params;
    use approx::assert_abs_diff_eq;

    fn exact_abs(params: &ModelParams<f64>, n: usize) -> Vec<f64> {
        let eig = hamiltonian_tridiagonal(params).eigen(true).unwrap();
        let d = params.dimension();
        let vecs = eig.vectors.unwrap();
        (0..d).map(|i| vecs[i * d + n].abs()).collect()
    }

    #[test]
    fn normalised_and_overlapping() {
        let params = make_params(0.5, 1.0, 40).unwrap();
        for n in 3..=10 {
            let w = wkb_state(n, &params).unwrap();
            let norm: f64 = w.amplitudes.iter().map(|a| a * a).sum();
            assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
            let ex = exact_abs(&params, n);
            let overlap: f64 = w.amplitudes.iter().zip(&ex).map(|(a, b)| a * b).sum();
            assert!(overlap >= 0.9, "n={n} overlap={overlap}");
        }
    }

    #[test]
    fn forbidden_tails_decay() {
        let params = make_params(0.5f64, 1.0, 60).unwrap();
        for n in [2, 8, 20] {
            let w = wkb_state(n, &params).unwrap();
            let (first, last) = w.allowed.unwrap();
            let below: Vec<usize> = (0..first).filter(|&k| !w.unreliable[k]).collect();
            for pair in below.windows(2) {
                assert!(w.amplitudes[pair[0]] <= w.amplitudes[pair[1]], "n={n}");
            }
            let above: Vec<usize> = (last + 1..w.grid.len())
                .filter(|&k| !w.unreliable[k])
                .collect();
            for pair in above.windows(2) {
                assert!(w.amplitudes[pair[0]] >= w.amplitudes[pair[1]], "n={n}");
            }
            assert!(w.amplitudes.iter().all(|a| a.is_finite() && *a >= 0.0));
        }
    }
}
