//! Model parameters, the `K_z` eigenbasis and the teardrop geometry.
//!
//! The basis is ordered by ascending `m`, i.e. molecule-dominated states come
//! first. With this ordering every Hamiltonian of the form `a K_x + b K_z`
//! is a real symmetric tridiagonal matrix.

use crate::error::{domain, Result};
use crate::scalar::Real;

/// Tolerance for accepting `p` slightly outside `[-1/2, 1/2]`.
pub const ENDPOINT_TOL: f64 = 1e-12;

/// Physical parameters of the conversion model `H = eps K_z + v K_x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    /// Detuning `2 eps_a - eps_b` (zero of energy already shifted).
    pub epsilon: T,
    /// Conversion strength.
    pub v: T,
    /// Total atom number `N = n_a + 2 n_b`; always even.
    pub n_particles: usize,
    /// Semiclassical parameter `1 / (N/2 + 1)`.
    pub eta: T,
    /// Atomic mode energy, when the parameters were built from mode energies.
    pub epsilon_a: Option<T>,
    /// Molecular mode energy, when the parameters were built from mode energies.
    pub epsilon_b: Option<T>,
}

fn check_even(n_particles: usize) -> Result<()> {
    if n_particles < 2 || !n_particles.is_multiple_of(2) {
        return domain(format!(
            "N must be even and at least 2 (got {n_particles}); only even particle numbers are supported"
        ));
    }
    Ok(())
}

/// Validate `(epsilon, v, N)` and compute `eta`.
pub fn make_params<T: Real>(epsilon: T, v: T, n_particles: usize) -> Result<ModelParams<T>> {
    check_even(n_particles)?;
    if !epsilon.is_finite() || !v.is_finite() {
        return domain("epsilon and v must be finite");
    }
    Ok(ModelParams {
        epsilon,
        v,
        n_particles,
        eta: eta_for(n_particles),
        epsilon_a: None,
        epsilon_b: None,
    })
}

/// `1 / (N/2 + 1)`.
pub fn eta_for<T: Real>(n_particles: usize) -> T {
    T::one() / T::count(n_particles / 2 + 1)
}

impl<T: Real> ModelParams<T> {
    /// Build from the bare mode energies; `epsilon = 2 eps_a - eps_b`.
    pub fn from_mode_energies(
        epsilon_a: T,
        epsilon_b: T,
        v: T,
        n_particles: usize,
    ) -> Result<Self> {
        let two = T::lit(2.0);
        let mut p = make_params(two * epsilon_a - epsilon_b, v, n_particles)?;
        p.epsilon_a = Some(epsilon_a);
        p.epsilon_b = Some(epsilon_b);
        Ok(p)
    }

    /// Hilbert space dimension `N/2 + 1`.
    pub fn dimension(&self) -> usize {
        self.n_particles / 2 + 1
    }

    /// Same physics with a different coupling pair, keeping `N`.
    pub fn with_couplings(&self, epsilon: T, v: T) -> Self {
        ModelParams {
            epsilon,
            v,
            epsilon_a: None,
            epsilon_b: None,
            ..*self
        }
    }

    /// `sqrt(2) |v|`, the detuning at which the tip changes stability.
    pub fn critical_epsilon(&self) -> T {
        T::SQRT_2() * self.v.abs()
    }
}

/// Eigenbasis of `K_z` for fixed even `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct KzBasis<T> {
    pub n_particles: usize,
    /// `-N/4, -N/4 + 1, ..., N/4`.
    pub m_values: Vec<T>,
    /// `n_a(m) = 2m + N/2`.
    pub atom_counts: Vec<usize>,
    /// `n_b(m) = N/4 - m`.
    pub molecule_counts: Vec<usize>,
}

impl<T: Real> KzBasis<T> {
    pub fn dimension(&self) -> usize {
        self.m_values.len()
    }

    /// Index of the basis state with the given `m` (within 1e-9), if any.
    pub fn index_of(&self, m: T) -> Option<usize> {
        let k = (m * T::lit(4.0) + T::count(self.n_particles)) / T::lit(4.0);
        let k = k.round();
        if k < T::zero() || (k * T::lit(4.0) - T::count(self.n_particles)) / T::lit(4.0) != m {
            return None;
        }
        k.to_usize().filter(|&k| k < self.dimension())
    }
}

/// Basis in ascending `m`.
pub fn basis_states<T: Real>(n_particles: usize) -> Result<KzBasis<T>> {
    check_even(n_particles)?;
    let dim = n_particles / 2 + 1;
    let four = T::lit(4.0);
    let n = T::count(n_particles);
    // k indexes molecule number from the top: n_b = N/2 - k, n_a = 2k.
    let m_values = (0..dim).map(|k| (four * T::count(k) - n) / four).collect();
    let atom_counts = (0..dim).map(|k| 2 * k).collect();
    let molecule_counts = (0..dim).map(|k| n_particles / 2 - k).collect();
    Ok(KzBasis {
        n_particles,
        m_values,
        atom_counts,
        molecule_counts,
    })
}

/// `r^2(p) = (1 - 2p)(1 + 2p)^2 / 4`, no domain check.
#[inline]
pub fn radius_squared<T: Real>(p: T) -> T {
    let two = T::lit(2.0);
    let u = T::one() + two * p;
    (T::one() - two * p) * u * u / T::lit(4.0)
}

/// Radius of the teardrop cross-section at height `p`.
pub fn teardrop_radius<T: Real>(p: T) -> Result<T> {
    let p = clamp_to_domain(p)?;
    Ok(radius_squared(p).max(T::zero()).sqrt())
}

/// `r(p)` for `p` known to lie in the domain; negative rounding is clipped.
#[inline]
pub(crate) fn radius<T: Real>(p: T) -> T {
    radius_squared(p).max(T::zero()).sqrt()
}

/// `dr/dp`, finite on `(-1/2, 1/2)`.
#[inline]
pub(crate) fn radius_derivative<T: Real>(p: T) -> T {
    let two = T::lit(2.0);
    (two - T::lit(12.0) * p) / (T::lit(4.0) * (T::one() - two * p).max(T::zero()).sqrt())
}

/// Map `p` into `[-1/2, 1/2]`, accepting overshoot up to [`ENDPOINT_TOL`].
pub fn clamp_to_domain<T: Real>(p: T) -> Result<T> {
    let half = T::lit(0.5);
    let tol = T::lit(ENDPOINT_TOL);
    if !(p >= -half - tol && p <= half + tol) {
        return domain(format!("p = {p} outside [-1/2, 1/2]"));
    }
    Ok(p.max(-half).min(half))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn eta_examples() {
        assert_eq!(make_params(1.0, 1.0, 10).unwrap().eta, 1.0 / 6.0);
        assert_eq!(make_params(0.0, 1.0, 2).unwrap().eta, 0.5);
    }

    #[test]
    fn odd_or_zero_n_rejected() {
        let err = make_params(1.0, 1.0, 7).unwrap_err();
        assert!(err.to_string().contains("N must be even"));
        assert!(make_params(1.0, 1.0, 0).is_err());
        assert!(basis_states::<f64>(3).is_err());
    }

    #[test]
    fn mode_energies_give_detuning() {
        let p = ModelParams::from_mode_energies(0.75, 0.25, 1.0, 4).unwrap();
        assert_eq!(p.epsilon, 1.25);
        assert_eq!(p.epsilon_a, Some(0.75));
    }

    #[test]
    fn smallest_basis() {
        let b = basis_states::<f64>(2).unwrap();
        assert_eq!(b.m_values, vec![-0.5, 0.5]);
        assert_eq!(b.atom_counts, vec![0, 2]);
        assert_eq!(b.molecule_counts, vec![1, 0]);
    }

    #[test]
    fn basis_sizes() {
        let b = basis_states::<f64>(8).unwrap();
        assert_eq!(b.m_values, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert_eq!(basis_states::<f64>(50).unwrap().dimension(), 26);
        for n in (2..=60).step_by(2) {
            let b = basis_states::<f64>(n).unwrap();
            assert_eq!(b.dimension(), n / 2 + 1);
            for k in 0..b.dimension() {
                assert_eq!(b.atom_counts[k] + 2 * b.molecule_counts[k], n);
                assert_eq!(
                    b.atom_counts[k] as f64,
                    2.0 * b.m_values[k] + n as f64 / 2.0
                );
                if k > 0 {
                    assert_eq!(b.m_values[k] - b.m_values[k - 1], 1.0);
                }
            }
            assert_eq!(b.index_of(n as f64 / 4.0), Some(n / 2));
            assert_eq!(b.index_of(-(n as f64) / 4.0), Some(0));
        }
    }

    #[test]
    fn radius_examples() {
        assert_eq!(teardrop_radius(0.0).unwrap(), 0.5);
        assert_eq!(teardrop_radius(-0.5).unwrap(), 0.0);
        assert_eq!(teardrop_radius(0.5).unwrap(), 0.0);
        assert_abs_diff_eq!(
            teardrop_radius(1.0 / 6.0).unwrap(),
            (8.0f64 / 27.0).sqrt(),
            epsilon = 1e-15
        );
        assert!(teardrop_radius(0.5 + 1e-13).is_ok());
        assert!(teardrop_radius(-0.5 - 1e-9).is_err());
        assert!(teardrop_radius(f64::NAN).is_err());
    }

    #[test]
    fn radius_squared_matches_definition() {
        for i in 0..1000 {
            let p = -0.5 + i as f64 / 999.0;
            let direct = 0.25 * (1.0 - 2.0 * p) * (1.0 + 2.0 * p).powi(2);
            assert_abs_diff_eq!(radius_squared(p), direct, epsilon = 1e-15);
            assert!(teardrop_radius(p).unwrap() >= 0.0);
        }
    }

    #[test]
    fn radius_derivative_matches_finite_difference() {
        for &p in &[-0.4, -0.1, 0.0, 1.0 / 6.0, 0.3, 0.45] {
            let h = 1e-6;
            let fd = (radius(p + h) - radius(p - h)) / (2.0 * h);
            assert_abs_diff_eq!(radius_derivative(p), fd, epsilon = 1e-8);
        }
    }

    #[test]
    fn eta_times_quarter_n_approaches_half() {
        let vals: Vec<f64> = [10usize, 100, 1000]
            .iter()
            .map(|&n| eta_for::<f64>(n) * n as f64 / 4.0)
            .collect();
        assert!(vals[0] < vals[1] && vals[1] < vals[2] && vals[2] < 0.5);
        assert!((0.5 - vals[2]) < 1e-3);
    }

    #[test]
    fn single_precision_basis() {
        let b = basis_states::<f32>(6).unwrap();
        assert_eq!(b.m_values, vec![-1.5f32, -0.5, 0.5, 1.5]);
    }
}
