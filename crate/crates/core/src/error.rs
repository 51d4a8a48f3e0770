use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{a} is not coprime to modulus {n}")]
    NotCoprime { a: u64, n: u64 },

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("prime-power search exhausted the 63-bit range for n = {0}")]
    SearchExhausted(u64),

    #[error("{d} does not divide {group_order}")]
    OrderNotDividing { d: u64, group_order: u64 },

    #[error("the zero element has no multiplication matrix")]
    ZeroElement,

    #[error("group order exceeds the element cap of {cap}")]
    CapExceeded { cap: u64 },

    #[error("enumeration budget of {budget} search nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("degree self-check failed: {0} is not a perfect square in [1, |G|]")]
    NotPerfectSquare(u64),

    #[error("degree self-check failed: sum of squared degrees {sum} != group order {order}")]
    SumOfSquaresMismatch { sum: u64, order: u64 },

    #[error("eigenspace splitting failed: {0}")]
    Splitting(String),
}

pub type Result<T> = std::result::Result<T, Error>;
