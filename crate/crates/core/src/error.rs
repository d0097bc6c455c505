use thiserror::Error;

/// Errors produced by the numerical kernels, distributions and fitting routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("invalid transform coefficients (a={a}, b={b}, c={c}): {reason}")]
    InvalidCoeffs {
        a: f64,
        b: f64,
        c: f64,
        reason: &'static str,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
    },

    #[error("quadrature tolerance {tolerance:e} not met (error estimate {estimate:e})")]
    ToleranceNotMet { tolerance: f64, estimate: f64 },

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error(
        "likelihood-ratio statistic {0} is negative beyond slack; the parent fit is not optimal"
    )]
    NegativeStatistic(f64),

    #[error("{count} observation(s) lie on the interval boundary (rows {rows:?})")]
    BoundaryValue { count: usize, rows: Vec<usize> },

    #[error("empty dataset")]
    EmptyData,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
