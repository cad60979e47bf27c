use thiserror::Error;

/// Errors raised by the scalar kernel, the matrix kernel and the chain checkers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix is not symmetric at ({i}, {j}): {a_ij} vs {a_ji}")]
    NotSymmetric { i: usize, j: usize, a_ij: f64, a_ji: f64 },

    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue}, max {max_eigenvalue})")]
    NotPositiveDefinite { min_eigenvalue: f64, max_eigenvalue: f64 },

    #[error("eigenvalue {eigenvalue} lies outside the domain of the matrix function")]
    SpectrumOutsideDomain { eigenvalue: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    /// The instance does not satisfy the hypotheses of the statement being checked.
    /// This is not a failure of the inequality.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("function `{id}` violates its contract: {reason}")]
    FunctionContract { id: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}

pub(crate) fn not_applicable(msg: impl Into<String>) -> Error {
    Error::NotApplicable(msg.into())
}
