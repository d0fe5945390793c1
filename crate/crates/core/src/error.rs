use num_complex::Complex64;
use thiserror::Error;

use crate::scalar::Backend;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("backend mismatch: {left} vs {right}")]
    BackendMismatch { left: Backend, right: Backend },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("unsupported backend conversion from {from} to {to}")]
    UnsupportedConversion { from: Backend, to: Backend },

    /// A value lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed or insufficient user input.
    #[error("input error: {0}")]
    Input(String),

    /// The requested backend cannot represent the requested values.
    #[error("backend error: {0}")]
    Backend(String),

    #[error("coefficient {index} scaled by {index}! is not an integer: {value}")]
    Integrality { index: usize, value: String },

    #[error("root iteration did not converge after {iterations} iterations")]
    Convergence {
        iterations: usize,
        best: Vec<Complex64>,
        residuals: Vec<f64>,
    },

    #[error("degree {n}: {source}")]
    AtDegree { n: usize, source: Box<Error> },

    #[error("zero root is not allowed")]
    ZeroRoot,
}

impl Error {
    /// The underlying error with any degree tag removed.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::AtDegree { source, .. } => source.root_cause(),
            other => other,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
