//! Classical limit: flow on the teardrop surface, its fixed points and the
//! equivalent canonical and wave-function descriptions.

mod bloch;
mod fixed_points;
mod flow;
mod nls;

pub use bloch::{
    distance_to_cross_section, from_canonical, surface_minimizer, to_canonical, BlochPoint,
    CanonicalPoint, SURFACE_TOL,
};
pub use fixed_points::{
    energy_bounds, fixed_point_polynomial, fixed_points, FixedPoint, Stability,
};
pub use flow::{
    canonical_rhs, integrate_canonical, integrate_trajectory, mf_energy, mf_energy_canonical,
    mf_rhs, uniform_times, Trajectory, DEFAULT_TOL,
};
pub use nls::{
    bloch_projection, integrate_nls, nls_rhs, wavefunction_from_bloch, MeanFieldWavefunction,
    WaveVariant,
};
