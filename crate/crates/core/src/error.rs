use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no sign change on [{lo}, {hi}] (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("root finder did not reach tolerance within {max_iter} iterations (last bracket width {width})")]
    MaxIterExceeded { max_iter: usize, width: f64 },

    #[error("no bracket found after {expansions} expansions from seed {seed}")]
    BracketNotFound { seed: f64, expansions: usize },

    #[error("argument {value} outside the domain of {what}")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("undefined at alpha = 0, the Neumann case")]
    AlphaZero,

    #[error("{what} requires a box of dimension {expected}, got {got}")]
    Dimension { what: &'static str, expected: usize, got: usize },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("inconsistent eigenvalue data: {reason} (residual {residual:e})")]
    Inconsistent { reason: String, residual: f64 },
}
