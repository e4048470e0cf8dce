//! Small dense/tridiagonal linear algebra used by the many-particle layer.
//!
//! Everything here is generic over [`Real`](crate::Real); the matrices met in
//! this model are at most a few thousand rows, so plain `Vec` storage is enough.

mod hermitian;
mod matrix;
mod tridiagonal;

pub use hermitian::{hermitian_eigen, HermitianEigen};
pub use matrix::CMatrix;
pub use tridiagonal::{SymTridiagonal, TridiagonalEigen};
