use thiserror::Error;

/// Errors raised by field construction, polynomial arithmetic, counting and
/// the brute-force sweeps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported base field degree k = {0} (supported: 1..=16)")]
    UnsupportedDegree(u32),

    #[error("modulus {0} is not irreducible")]
    ReducibleModulus(String),

    #[error("modulus {0} is not monic of the required degree")]
    BadModulus(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields")]
    ParamsMismatch,

    #[error("degree {got} too small (need at least {need})")]
    DegreeTooSmall { got: usize, need: usize },

    #[error("{m} does not divide {n}")]
    NotADivisor { m: usize, n: usize },

    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("time cap of {0} s exceeded")]
    TimeCapExceeded(u64),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("element index {index} out of range for q = {q}")]
    InvalidElement { index: u64, q: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    /// A Möbius sum that must be divisible by `n` was not; signals a bug.
    #[error("inexact division of {numerator} by {denominator}")]
    InexactDivision {
        numerator: String,
        denominator: String,
    },

    /// A count came out negative; signals a bug.
    #[error("negative count {0}")]
    NegativeCount(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::TimeCapExceeded(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
