//! Semiclassical description built from mean-field data: potential curves,
//! turning points, the enclosed phase-space area, Bohr-Sommerfeld levels,
//! periods, the density of states and WKB eigenvector envelopes.
//!
//! Energies are handled on the rescaled scale `e = eta E` internally; the
//! quantised spectrum reports both `E` and `e`.

mod action;
mod cubic;
mod elliptic;
mod period;
mod potential;
mod quadrature;
mod quantize;
mod turning;
mod wkb;

pub use action::action;
pub use cubic::real_cubic_roots;
pub use elliptic::elliptic_k;
pub use period::{density_of_states, period};
pub use potential::{potential_curves, PotentialCurves};
pub use quadrature::{gauss_legendre, integrate_adaptive};
pub use quantize::{quantize, quantize_level, SemiclassicalLevel, SemiclassicalSpectrum};
pub use turning::{turning_point_polynomial, turning_points, Branch, TurningPoints};
pub use wkb::{wkb_state, WKBState, GUARD_BAND};
