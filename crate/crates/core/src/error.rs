use thiserror::Error;

#[derive(Debug, Error)]
pub enum KostkaError {
    #[error("invalid conductor {0}; must be at least 1")]
    InvalidConductor(i64),
    #[error("series divisor has a non-invertible constant term")]
    NotAUnit,
    #[error("division by zero")]
    DivisionByZero,
    #[error("group generation exceeded the bound of {0} elements")]
    GroupTooLarge(usize),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("unsupported rank: {0}")]
    UnsupportedRank(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("preorder violates the required conditions: {0}")]
    MalleViolation(String),
    #[error("character table is not closed under complex conjugation: {0}")]
    TableNotClosedUnderConjugation(String),
    #[error("not a reflection group: {0}")]
    NotAReflectionGroup(String),
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),
    #[error("truncation {trunc} is insufficient: {detail}")]
    TruncationInsufficient { trunc: usize, detail: String },
    #[error("basis incomplete: {0}")]
    BasisIncomplete(String),
    #[error("factorization failed: {0}")]
    FactorizationFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, KostkaError>;
