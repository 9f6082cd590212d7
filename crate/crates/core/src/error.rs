use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("generator index {index} is out of range (valid indices {first}..={last})")]
    IndexOutOfRange { index: usize, first: usize, last: usize },
    #[error("invalid descriptor field `{field}`: {reason}")]
    Descriptor { field: String, reason: String },
    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
