use thiserror::Error;

use crate::qarith::LaurentPoly;

/// Every failure the library can report. Variants that signal a violated
/// mathematical claim (`NonDivisible`, `IntegralityViolation`,
/// `OracleMismatch`) are never expected on valid input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("argument must be non-negative, got {0}")]
    NegativeArgument(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("exact division failed, remainder {remainder}")]
    NonDivisible { remainder: LaurentPoly },

    #[error("polynomial has exponents that are not whole powers of q: {0}")]
    QuarterPowerPresent(LaurentPoly),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("invalid diagram: {0}")]
    Validation(String),

    #[error("linking coefficient of crossing {crossing} is not an integer ({twice}/2)")]
    NonIntegralLinking { crossing: usize, twice: i64 },

    #[error("exponent {name} is not an integer ({twice}/2) at state {state:?}")]
    NonIntegralExponent {
        name: &'static str,
        twice: i64,
        state: Vec<u32>,
    },

    #[error("integrality violation: {0}")]
    IntegralityViolation(String),

    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),

    #[error("malformed tangle word: {0}")]
    MalformedTangle(String),

    #[error("unknown built-in knot `{0}`")]
    UnknownKnot(String),
}

pub type Result<T> = std::result::Result<T, Error>;
