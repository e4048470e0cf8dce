use num_complex::Complex;

use super::dynamics::QuantumState;
use super::operators::{build_generators, Label, OperatorMatrix};
use super::spectrum::exact_spectrum;
use crate::error::{domain, Result};
use crate::model::KzBasis;
use crate::scalar::Real;

/// Gap below which the ground state of `a K_x + b K_z + c K_y` is reported as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-12;

/// Coefficients of `K = a K_x + b K_z + c K_y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationalSpec<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Real> VariationalSpec<T> {
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        if a == T::zero() && b == T::zero() && c == T::zero() {
            return domain("variational Hamiltonian needs (a, b, c) != 0");
        }
        Ok(VariationalSpec { a, b, c })
    }
}

/// Ground state of the variational Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationalGround<T> {
    pub state: QuantumState<T>,
    /// `E_1 - E_0` of the variational Hamiltonian.
    pub gap: T,
    /// Set when `gap < DEGENERACY_GAP`; the state is then the first column
    /// returned by the eigensolver.
    pub degenerate: bool,
}

pub fn variational_ground_state<T: Real>(
    spec: &VariationalSpec<T>,
    basis: &KzBasis<T>,
) -> Result<VariationalGround<T>> {
    VariationalSpec::new(spec.a, spec.b, spec.c)?;
    let g = build_generators(basis);
    let k = OperatorMatrix::new(Label::Custom, g.combination(spec.a, spec.b, spec.c));
    let s = exact_spectrum(&k, true)?;
    let v = s.vectors.expect("requested eigenvectors");
    let amps: Vec<Complex<T>> = v.column(0);
    let gap = if s.values.len() > 1 {
        s.values[1] - s.values[0]
    } else {
        T::infinity()
    };
    Ok(VariationalGround {
        state: QuantumState::normalized(amps, basis.n_particles)?,
        gap,
        degenerate: gap < T::lit(DEGENERACY_GAP),
    })
}
