use thiserror::Error;

/// Errors raised by the library. Each variant maps onto a CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("d = {0} is not one of 1, 2, 3, 7, 11")]
    UnsupportedField(i64),
    #[error("{delta} = N({witness}) is a norm in O_{d}")]
    NormDelta { d: u32, delta: u64, witness: String },
    #[error("k = {0} must be an odd positive integer")]
    InvalidWeight(i64),
    #[error("(d, s) = ({d}, {s}) is outside the scope of the Cohen-Zagier formulas")]
    OutOfScope { d: u32, s: i64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    /// Process exit code: 2 for precondition violations, 3 for consistency failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Consistency(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
