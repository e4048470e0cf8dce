use super::dynamics::QuantumState;
use super::operators::{Generators, OperatorMatrix};
use crate::model::ModelParams;
use crate::scalar::Real;

/// First moments of the generators, the second/third moments that enter the
/// Heisenberg equations and the conservation law, and the energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet<T> {
    pub kx: T,
    pub ky: T,
    pub kz: T,
    pub kx2: T,
    pub ky2: T,
    pub kz2: T,
    pub kz3: T,
    pub energy: T,
}

impl<T: Real> MomentSet<T> {
    /// `eta <K_j>`: the mean-field coordinates of a many-particle state.
    pub fn scaled_first_moments(&self, eta: T) -> [T; 3] {
        [eta * self.kx, eta * self.ky, eta * self.kz]
    }
}

/// Expectation values in `psi`. `energy` is `<h>`.
pub fn observables<T: Real>(
    psi: &QuantumState<T>,
    gens: &Generators<T>,
    h: &OperatorMatrix<T>,
) -> MomentSet<T> {
    let amps = &psi.amplitudes;
    let kx_psi = gens.kx.matrix.matvec(amps);
    let ky_psi = gens.ky.matrix.matvec(amps);
    let dot = |v: &[num_complex::Complex<T>]| {
        amps.iter()
            .zip(v)
            .fold(T::zero(), |acc, (a, b)| acc + (a.conj() * b).re)
    };
    let sq = |v: &[num_complex::Complex<T>]| v.iter().map(|z| z.norm_sqr()).sum::<T>();
    let mut kz = T::zero();
    let mut kz2 = T::zero();
    let mut kz3 = T::zero();
    for (i, a) in amps.iter().enumerate() {
        let w = a.norm_sqr();
        let m = gens.kz.matrix[(i, i)].re;
        kz = kz + w * m;
        kz2 = kz2 + w * m * m;
        kz3 = kz3 + w * m * m * m;
    }
    MomentSet {
        kx: dot(&kx_psi),
        ky: dot(&ky_psi),
        kz,
        kx2: sq(&kx_psi),
        ky2: sq(&ky_psi),
        kz2,
        kz3,
        energy: h.matrix.expectation(amps).re,
    }
}

/// Right-hand side of the conservation law for `<K_x^2> + <K_y^2>` on the fixed-`N`
/// sector, where mixed moments `<N_hat K_z^j>` reduce to `N <K_z^j>`.
pub fn conservation_rhs<T: Real>(m: &MomentSet<T>, n_particles: usize) -> T {
    let n = T::count(n_particles);
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    -two * m.kz / n + m.kz + n * m.kz / four - m.kz2 - four * m.kz3 / n
        + n * n / T::lit(16.0)
        + n / four
}

/// `d/dt <K_x>, <K_y>, <K_z>` from the Heisenberg equations for `H = eps K_z + v K_x`.
pub fn heisenberg_rates<T: Real>(m: &MomentSet<T>, params: &ModelParams<T>) -> [T; 3] {
    let n = T::count(params.n_particles);
    let (eps, v) = (params.epsilon, params.v);
    let ky_rate = eps * m.kx
        + v / T::lit(2.0)
        + v / (T::lit(8.0) * n) * (n * n - T::lit(8.0) * n * m.kz - T::lit(48.0) * m.kz2);
    [-eps * m.ky, ky_rate, v * m.ky]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::many_particle::{build_generators, build_hamiltonian};
    use crate::model::{basis_states, make_params};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex;
    use proptest::prelude::*;

    #[test]
    fn extreme_basis_states() {
        let n = 12;
        let b = basis_states::<f64>(n).unwrap();
        let g = build_generators(&b);
        let h = build_hamiltonian(&make_params(1.0, 1.0, n).unwrap());
        let top = observables(&QuantumState::basis_state(&b, 3.0).unwrap(), &g, &h);
        assert_eq!((top.kz, top.kx, top.ky), (3.0, 0.0, 0.0));
        let bottom = observables(&QuantumState::basis_state(&b, -3.0).unwrap(), &g, &h);
        assert_eq!(bottom.kz, -3.0);
        assert_abs_diff_eq!(bottom.energy, -3.0, epsilon = 1e-15);
    }

    proptest! {
        #[test]
        fn conservation_law_holds_for_random_states(
            half in 1usize..=20,
            re in prop::collection::vec(-1.0f64..1.0, 21),
            im in prop::collection::vec(-1.0f64..1.0, 21),
        ) {
            let n = 2 * half;
            let b = basis_states::<f64>(n).unwrap();
            let g = build_generators(&b);
            let h = build_hamiltonian(&make_params(1.0, 1.0, n).unwrap());
            let amps: Vec<Complex<f64>> = (0..b.dimension()).map(|k| Complex::new(re[k] + 1e-3, im[k])).collect();
            let psi = QuantumState::normalized(amps, n).unwrap();
            let m = observables(&psi, &g, &h);
            prop_assert!((m.kx2 + m.ky2 - conservation_rhs(&m, n)).abs() <= 1e-9);
        }
    }
}
