use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("not divisible: {0}")]
    NotDivisible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable { name: String, line: usize, column: usize },

    #[error("target inside base locus: {0}")]
    InsideBaseLocus(String),

    #[error("{0}")]
    Certification(String),

    #[error("probabilistic trials disagree: {0}")]
    TrialsDisagree(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
