use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The CLI maps [`Error::BudgetExceeded`] to exit code 3, [`Error::Verification`]
/// to exit code 2 and everything else to exit code 4.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("dimension mismatch: expected {expected} exponents, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown variable `{name}` at offset {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid term order: {0}")]
    InvalidOrder(String),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("matrix error: {0}")]
    Matrix(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("characteristic mismatch: ring has characteristic {ring}, requested {requested}")]
    Characteristic { ring: u64, requested: u64 },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
