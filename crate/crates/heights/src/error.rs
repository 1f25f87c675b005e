use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("density is singular at z = {0}")]
    Singular(f64),
    #[error(
        "quadrature tolerance not met: requested {requested:e}, achieved {achieved:e} \
         after {evaluations} evaluations"
    )]
    ToleranceNotMet {
        requested: f64,
        achieved: f64,
        evaluations: u64,
    },
    #[error("root finding did not converge: residual {residual:e}")]
    NoConvergence { residual: f64 },
    #[error(
        "floor search exhausted: condition not met up to x = {limit:e} \
         (profile approaches {asymptote:e})"
    )]
    SearchExhausted { limit: f64, asymptote: f64 },
    #[error("contract violation: {0}")]
    ContractViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
