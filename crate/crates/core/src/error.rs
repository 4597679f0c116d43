use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("expected a {expected}-vector, got grade {got}")]
    GradeMismatch { expected: usize, got: usize },

    #[error("the Schouten bracket is not defined for grade-0 arguments")]
    GradeZero,

    #[error("not an invariant {grade}-vector: {reason}")]
    NotInvariant { grade: usize, reason: String },

    #[error("tensor is not fixed by the real structure")]
    NotPhiFixed,

    #[error("the zero point has no image in projective space")]
    ZeroPoint,

    #[error("chart index {0} out of range")]
    BadChart(usize),

    #[error("invalid form: {0}")]
    InvalidForm(String),

    #[error("invalid polynomial: {0}")]
    InvalidPoly(String),

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("unknown identifier `{name}` at column {column}")]
    UnknownIdentifier { column: usize, name: String },

    #[error("invalid tensor JSON: {0}")]
    TensorJson(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
