//! Crate-wide error type.
//!
//! Errors are machine-classifiable: the CLI maps `code()` onto its exit
//! status and JSON error objects.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("p must be an odd prime, got {0}")]
    BadPrime(u64),

    #[error("{0} is not a unit (valuation >= 1)")]
    NotAUnit(String),

    #[error("division of {num} by {den} is not exact at the working precision")]
    InexactDivision { num: String, den: String },

    #[error("value has negative valuation {valuation}, not a p-adic integer")]
    NotIntegral { valuation: i64 },

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("element indistinguishable from zero at precision {0}")]
    IndistinguishableFromZero(u32),

    #[error("truncation order {truncation} too short: lambda-invariant >= {needed}")]
    TruncationTooShort { truncation: usize, needed: usize },

    #[error("pole of the trivial branch: {0}")]
    TrivialBranchPole(String),

    #[error("character of order {order} is not tame for p = {p} (order must divide p-1)")]
    NotTame { order: u64, p: u64 },

    #[error("mismatched parameters: {0}")]
    Mismatch(String),

    #[error("linear system is underdetermined: {0}")]
    Underdetermined(String),

    #[error("level {0} not available in distribution")]
    LevelUnavailable(u64),

    #[error("distribution is not bounded: valuation {valuation} at level {level}")]
    Unbounded { valuation: i64, level: u64 },
}

impl Error {
    /// Stable machine-readable code, used by the CLI for exit statuses.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Usage(_) | Error::BadPrime(_) | Error::Mismatch(_) => "usage",
            Error::Precondition(_)
            | Error::NotAUnit(_)
            | Error::NotTame { .. }
            | Error::Underdetermined(_)
            | Error::LevelUnavailable(_)
            | Error::Unbounded { .. }
            | Error::NotIntegral { .. } => "precondition",
            Error::TrivialBranchPole(_) => "pole",
            Error::InexactDivision { .. }
            | Error::PrecisionExhausted(_)
            | Error::IndistinguishableFromZero(_)
            | Error::TruncationTooShort { .. } => "precision",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
