use thiserror::Error;

/// Errors raised by the model, solver and semiclassical layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two objects that must have matching sizes do not.
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A matrix that must be Hermitian is not (deviation in max-norm).
    #[error("matrix is not Hermitian (max |A - A^H| = {0:e})")]
    NotHermitian(f64),

    /// An iterative method failed to converge.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// Adaptive integrator step size collapsed.
    #[error("step size underflow at t = {t:e} (h = {h:e}): {context}")]
    StepUnderflow { t: f64, h: f64, context: String },

    /// Internal consistency check failed (a property the model guarantees was violated).
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
