use num_complex::Complex;

use super::operators::OperatorMatrix;
use super::spectrum::{exact_spectrum, Spectrum};
use crate::error::{domain, Error, Result};
use crate::linalg::CMatrix;
use crate::model::KzBasis;
use crate::scalar::Real;

/// Normalisation tolerance for quantum states.
pub const NORM_TOL: f64 = 1e-12;

/// Normalised state vector over the `K_z` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState<T> {
    pub amplitudes: Vec<Complex<T>>,
    pub n_particles: usize,
}

impl<T: Real> QuantumState<T> {
    /// Wrap amplitudes that are already normalised.
    pub fn new(amplitudes: Vec<Complex<T>>, n_particles: usize) -> Result<Self> {
        if amplitudes.len() != n_particles / 2 + 1 {
            return Err(Error::DimensionMismatch {
                expected: n_particles / 2 + 1,
                found: amplitudes.len(),
            });
        }
        let s = QuantumState {
            amplitudes,
            n_particles,
        };
        if (s.norm() - T::one()).abs() > T::tol(NORM_TOL) {
            return domain(format!("state norm {} differs from 1", s.norm()));
        }
        Ok(s)
    }

    /// Normalise arbitrary (non-zero) amplitudes.
    pub fn normalized(mut amplitudes: Vec<Complex<T>>, n_particles: usize) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm == T::zero() || !norm.is_finite() {
            return domain("cannot normalise a zero or non-finite vector");
        }
        for z in amplitudes.iter_mut() {
            *z = *z / norm;
        }
        Self::new(amplitudes, n_particles)
    }

    /// The basis state `|m>`.
    pub fn basis_state(basis: &KzBasis<T>, m: T) -> Result<Self> {
        let k = basis
            .index_of(m)
            .ok_or_else(|| Error::Domain(format!("m = {m} is not a basis label")))?;
        let mut amps = vec![Complex::new(T::zero(), T::zero()); basis.dimension()];
        amps[k] = Complex::new(T::one(), T::zero());
        Self::new(amps, basis.n_particles)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> T {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<T>()
            .sqrt()
    }

    pub fn populations(&self) -> Vec<T> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * b
            })
    }
}

/// Time evolution by spectral decomposition of a time-independent Hermitian `H`.
#[derive(Debug, Clone)]
pub struct Propagator<T> {
    spectrum: Spectrum<T>,
    vectors: CMatrix<T>,
    n_particles: usize,
}

impl<T: Real> Propagator<T> {
    pub fn new(h: &OperatorMatrix<T>, n_particles: usize) -> Result<Self> {
        let spectrum = exact_spectrum(h, true)?;
        let vectors = spectrum.vectors.clone().expect("requested eigenvectors");
        Ok(Propagator {
            spectrum,
            vectors,
            n_particles,
        })
    }

    pub fn energies(&self) -> &[T] {
        &self.spectrum.values
    }

    /// Coefficients `<k|psi>` in the energy eigenbasis.
    pub fn coefficients(&self, psi: &QuantumState<T>) -> Result<Vec<Complex<T>>> {
        let n = self.vectors.dim();
        if psi.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: psi.dim(),
            });
        }
        Ok((0..n)
            .map(|k| {
                (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, i| {
                    acc + self.vectors[(i, k)].conj() * psi.amplitudes[i]
                })
            })
            .collect())
    }

    /// `psi(t) = sum_k exp(-i E_k t) <k|psi0> |k>`.
    pub fn evolve_from_coefficients(&self, coeffs: &[Complex<T>], t: T) -> QuantumState<T> {
        let n = self.vectors.dim();
        let phased: Vec<Complex<T>> = coeffs
            .iter()
            .zip(&self.spectrum.values)
            .map(|(&c, &e)| c * Complex::new(T::zero(), -e * t).exp())
            .collect();
        let amps = (0..n)
            .map(|i| {
                (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                    acc + self.vectors[(i, k)] * phased[k]
                })
            })
            .collect();
        QuantumState {
            amplitudes: amps,
            n_particles: self.n_particles,
        }
    }

    pub fn evolve(&self, psi0: &QuantumState<T>, times: &[T]) -> Result<Vec<QuantumState<T>>> {
        let coeffs = self.coefficients(psi0)?;
        Ok(times
            .iter()
            .map(|&t| self.evolve_from_coefficients(&coeffs, t))
            .collect())
    }
}

/// Exact states `psi(t)` at each requested time.
pub fn evolve_state<T: Real>(
    h: &OperatorMatrix<T>,
    psi0: &QuantumState<T>,
    times: &[T],
) -> Result<Vec<QuantumState<T>>> {
    if h.dim() != psi0.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: psi0.dim(),
        });
    }
    Propagator::new(h, psi0.n_particles)?.evolve(psi0, times)
}
