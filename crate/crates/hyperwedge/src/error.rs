//! Error type shared by every numerical routine in the crate.

use num_complex::Complex64;
use thiserror::Error;

/// Failure modes of the special-function, quadrature and kernel routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// Argument lies on a branch cut.
    #[error("{op}: argument {at} lies on the branch cut")]
    Cut { op: &'static str, at: Complex64 },

    /// Evaluation at a pole of the function.
    #[error("{op}: pole at {at}")]
    Pole { op: &'static str, at: Complex64 },

    /// Parameter combination excluded by the definition, e.g. ν + μ a negative integer for Q.
    #[error("{op}: excluded parameter combination ({detail})")]
    ParameterPole { op: &'static str, detail: String },

    /// An iterative method did not reach its tolerance.
    #[error("{op} did not converge: {detail}")]
    NonConvergence { op: &'static str, detail: String },

    /// Adaptive quadrature ran out of subdivisions; carries the best estimate.
    #[error("subdivision limit reached (estimate {value}, error estimate {err_est:e})")]
    SubdivisionLimit { value: Complex64, err_est: f64 },

    /// Caller violated a documented precondition.
    #[error("{op}: precondition violated: {detail}")]
    Precondition { op: &'static str, detail: String },

    /// The requested integral is divergent.
    #[error("{op}: integral diverges ({detail})")]
    Divergent { op: &'static str, detail: String },

    /// Two pole families of a kernel coincide.
    #[error("{op}: coincident poles near {at}")]
    PoleCollision { op: &'static str, at: f64 },

    /// Kernel parameters are invalid.
    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    /// Parameters outside the regime where an estimate is stated.
    #[error("{op}: outside regime ({detail})")]
    Regime { op: &'static str, detail: String },
}

impl Error {
    /// Name of the operation that failed.
    pub fn op(&self) -> &'static str {
        match self {
            Error::Domain { op, .. }
            | Error::Cut { op, .. }
            | Error::Pole { op, .. }
            | Error::ParameterPole { op, .. }
            | Error::NonConvergence { op, .. }
            | Error::Precondition { op, .. }
            | Error::Divergent { op, .. }
            | Error::PoleCollision { op, .. }
            | Error::Regime { op, .. } => op,
            Error::SubdivisionLimit { .. } => "quadrature",
            Error::InvalidKernel(_) => "kernel",
        }
    }
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain { op, detail: detail.into() }
}

pub(crate) fn precondition(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Precondition { op, detail: detail.into() }
}

pub(crate) fn non_convergence(op: &'static str, detail: impl Into<String>) -> Error {
    Error::NonConvergence { op, detail: detail.into() }
}
