//! Exact many-particle treatment on the `(N/2 + 1)`-dimensional fixed-`N` sector.

mod dynamics;
mod moments;
mod operators;
mod spectrum;
mod variational;

pub use dynamics::{evolve_state, Propagator, QuantumState};
pub use moments::{conservation_rhs, heisenberg_rates, observables, MomentSet};
pub use operators::{
    build_generators, build_hamiltonian, casimir_matrix, hamiltonian_tridiagonal, ladder_element,
    structure_polynomial, structure_polynomial_matrix, Generators, Label, OperatorMatrix,
};
pub use spectrum::{exact_spectrum, tridiagonal_spectrum, Spectrum};
pub use variational::{variational_ground_state, VariationalGround, VariationalSpec};
