//! Bosonic atom-molecule conversion model at three levels of description:
//! exact many-particle quantum mechanics, the mean-field flow on the teardrop
//! surface, and semiclassical quantisation of that flow.
//!
//! All numerics are generic over the scalar type (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.

mod error;
mod scalar;

pub mod linalg;
pub mod many_particle;
pub mod mean_field;
pub mod model;
pub mod ode;
pub mod semiclassics;

pub use error::{Error, Result};
pub use scalar::Real;

pub use model::{basis_states, eta_for, make_params, teardrop_radius};

/// Model parameters in double precision.
pub type Params = model::ModelParams<f64>;
/// `K_z` eigenbasis in double precision.
pub type Basis = model::KzBasis<f64>;
/// Dense complex matrix in double precision.
pub type Matrix = linalg::CMatrix<f64>;
/// Mean-field point in double precision.
pub type Bloch = mean_field::BlochPoint<f64>;
/// Canonical point in double precision.
pub type Canonical = mean_field::CanonicalPoint<f64>;
/// Mean-field fixed point in double precision.
pub type Fixed = mean_field::FixedPoint<f64>;
/// Quantum state in double precision.
pub type State = many_particle::QuantumState<f64>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_precision_pipeline() {
        let params = make_params(0.5f32, 1.0, 10).unwrap();
        let exact = many_particle::tridiagonal_spectrum(&params).unwrap();
        let sc = semiclassics::quantize(&params).unwrap().energies();
        assert_eq!(exact.len(), sc.len());
        for (a, b) in exact.iter().zip(&sc) {
            assert!((a - b).abs() < 0.2, "{a} vs {b}");
        }
        let fps = mean_field::fixed_points(&params).unwrap();
        assert_eq!(fps.len(), 3);
        let t = semiclassics::period(-0.1f32, &params).unwrap();
        assert!(t.is_finite() && t > 0.0);
    }

    #[test]
    fn two_particle_closed_form_f32() {
        let params = make_params(0.6f32, 0.8, 2).unwrap();
        let s = many_particle::tridiagonal_spectrum(&params).unwrap();
        assert!((s[1] - 0.5).abs() < 1e-6 && (s[0] + 0.5).abs() < 1e-6);
    }
}
