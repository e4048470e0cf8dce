use super::operators::{hamiltonian_tridiagonal, OperatorMatrix};
use crate::error::Result;
use crate::linalg::{hermitian_eigen, HermitianEigen};
use crate::model::ModelParams;
use crate::scalar::Real;

/// Ascending eigenvalues plus optional eigenvector columns.
pub type Spectrum<T> = HermitianEigen<T>;

/// All eigenpairs of a Hermitian operator matrix.
///
/// Tridiagonal matrices (every generator, the Hamiltonian and the variational
/// family) skip the Householder stage.
pub fn exact_spectrum<T: Real>(h: &OperatorMatrix<T>, want_vectors: bool) -> Result<Spectrum<T>> {
    hermitian_eigen(&h.matrix, want_vectors)
}

/// Eigenvalues of `eps K_z + v K_x` without forming a dense matrix.
pub fn tridiagonal_spectrum<T: Real>(params: &ModelParams<T>) -> Result<Vec<T>> {
    hamiltonian_tridiagonal(params).eigenvalues()
}
