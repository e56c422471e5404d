use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{func}: pole at {at}")]
    Pole { func: &'static str, at: String },
    #[error("{func}: {reason}")]
    Domain { func: &'static str, reason: String },
    #[error("{what}: no convergence after {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },
    #[error("quadrature subdivision limit reached (estimate {estimate:e}, error {err_estimate:e})")]
    Quadrature { estimate: f64, err_estimate: f64 },
    #[error("unsupported Meijer-G shape ({m},{n},{p},{q})")]
    UnsupportedShape { m: usize, n: usize, p: usize, q: usize },
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(func: &'static str, reason: impl Into<String>) -> Result<T> {
    Err(Error::Domain { func, reason: reason.into() })
}

pub(crate) fn pole<T>(func: &'static str, at: impl std::fmt::Display) -> Result<T> {
    Err(Error::Pole { func, at: at.to_string() })
}
