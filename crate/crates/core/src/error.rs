use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A caller broke a documented precondition (e.g. non-integral entries
    /// handed to the fraction-free engine).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("matrix of order {order} exceeds the cofactor expansion limit of {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("enumeration refused: {count} objects exceed the cap of {cap}")]
    CapExceeded { count: String, cap: u64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
