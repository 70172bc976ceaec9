//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by constructors and numerical operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constructor argument violated a domain invariant.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: String,
    },

    /// An adaptive quadrature did not reach the requested tolerance within
    /// the allowed number of subdivisions. Carries the achieved estimate so
    /// callers can decide whether the partial result is usable.
    #[error(
        "quadrature did not converge after {subdivisions} subdivisions: \
         achieved error {achieved:.3e}, requested {requested:.3e}"
    )]
    QuadratureFailure {
        achieved: f64,
        requested: f64,
        subdivisions: usize,
    },

    /// The limiting conductivity symbol is only defined away from k = 0.
    #[error("limiting conductivity symbol is undefined at k = 0")]
    SymbolUndefinedAtKZero,
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
