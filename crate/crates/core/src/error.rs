use thiserror::Error;

use crate::check::CheckReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension {dim} exceeds materialization cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("input failed verification: {what}")]
    Unverified { what: String, report: Box<CheckReport> },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
