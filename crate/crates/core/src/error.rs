use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("zero polynomial has no Newton polygon")]
    ZeroPolynomial,
    #[error("operands belong to different algebra signatures")]
    SignatureMismatch,
    #[error("generator `{0}` is not invertible")]
    NonInvertibleInverse(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid definition file: {0}")]
    Definition(String),
    #[error("{0}")]
    Invalid(String),
}
