use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] chardeg_core::Error),
    #[error("configuration: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use chardeg_core::Error as E;
        match self {
            CliError::Core(E::CapExceeded { .. } | E::BudgetExceeded { .. } | E::SearchExhausted(_)) => EXIT_LIMIT,
            // Self-check failures inside the degree engine.
            CliError::Core(E::NotPerfectSquare(_) | E::SumOfSquaresMismatch { .. } | E::Splitting(_)) => {
                EXIT_CHECK_FAILED
            }
            CliError::Core(_) | CliError::Config(_) => EXIT_INVALID_INPUT,
            CliError::Io(_) | CliError::Json(_) => EXIT_CHECK_FAILED,
        }
    }
}
