use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::model::ModelParams;
use crate::scalar::Real;

use super::action::action;
use super::turning::energy_scale;
use crate::mean_field::energy_bounds;

/// Bracket shrink as a fraction of the energy range.
const BRACKET_SHRINK: f64 = 1e-13;
/// Target width of the final bisection bracket in rescaled energy.
const ENERGY_TOL: f64 = 1e-12;
const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiclassicalLevel<T> {
    pub n: usize,
    /// Many-particle energy `E = e / eta`.
    pub energy_mp: T,
    /// Rescaled energy `e`.
    pub energy_mf: T,
    /// Enclosed area at `e`; equals `2 pi eta (n + 1/2)` up to the solver tolerance.
    pub action: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SemiclassicalSpectrum<T> {
    pub n_particles: usize,
    pub levels: Vec<SemiclassicalLevel<T>>,
}

impl<T: Real> SemiclassicalSpectrum<T> {
    /// Many-particle energies in level order.
    pub fn energies(&self) -> Vec<T> {
        self.levels.iter().map(|l| l.energy_mp).collect()
    }
}

/// Solve `S(e) = 2 pi eta (n + 1/2)` for level `n`.
pub fn quantize_level<T: Real>(n: usize, params: &ModelParams<T>) -> Result<SemiclassicalLevel<T>> {
    let levels = params.n_particles / 2 + 1;
    if n >= levels {
        return domain(format!("level {n} out of range 0..{levels}"));
    }
    let eta = params.eta;
    let target = T::TAU() * eta * (T::count(n) + T::lit(0.5));
    let (eps, v) = (params.epsilon, params.v);
    if eps == T::zero() && v == T::zero() {
        return Ok(SemiclassicalLevel {
            n,
            energy_mp: T::zero(),
            energy_mf: T::zero(),
            action: target,
        });
    }
    let e = if v == T::zero() {
        // S(e) = 2 pi (e/|eps| + 1/2) inverts in closed form.
        eps.abs() * (eta * (T::count(n) + T::lit(0.5)) - T::lit(0.5))
    } else {
        let (lo, hi) = energy_bounds(params)?;
        let delta = T::lit(BRACKET_SHRINK) * (hi - lo);
        let (mut a, mut b) = (lo + delta, hi - delta);
        let tol = T::tol(ENERGY_TOL) * energy_scale(params);
        for _ in 0..MAX_BISECTIONS {
            if b - a <= tol {
                break;
            }
            let mid = (a + b) * T::lit(0.5);
            if mid <= a || mid >= b {
                break;
            }
            if action(mid, params)? < target {
                a = mid;
            } else {
                b = mid;
            }
        }
        (a + b) * T::lit(0.5)
    };
    Ok(SemiclassicalLevel {
        n,
        energy_mp: e / eta,
        energy_mf: e,
        action: action(e, params)?,
    })
}

/// All `N/2 + 1` Bohr-Sommerfeld levels, computed in parallel.
pub fn quantize<T: Real>(params: &ModelParams<T>) -> Result<SemiclassicalSpectrum<T>> {
    let count = params.n_particles / 2 + 1;
    let levels = (0..count)
        .into_par_iter()
        .map(|n| quantize_level(n, params))
        .collect::<Result<Vec<_>>>()?;
    Ok(SemiclassicalSpectrum {
        n_particles: params.n_particles,
        levels,
    })
}
