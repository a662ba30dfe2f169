use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("negative multiplicity at {0}")]
    NegativeMultiplicity(String),
    #[error("f-sequence did not vanish within {0} steps")]
    CapExceeded(usize),
    #[error("not a d-diagonal: {0}")]
    NotADiagonal(String),
    #[error("diagonals are not disjoint: {0} and {1}")]
    NotDisjoint(String, String),
    #[error("expected {expected} vertices, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("degenerate polygon: N = {0} < 3")]
    Degenerate(i64),
    #[error("search exceeded {0} states")]
    SizeLimit(u64),
    #[error("validation failed: {0}")]
    ValidationFailure(String),
    #[error("vertex not found: {0}")]
    VertexNotFound(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidDiagram(_) => "invalid_diagram",
            Error::NegativeMultiplicity(_) => "negative_multiplicity",
            Error::CapExceeded(_) => "cap_exceeded",
            Error::NotADiagonal(_) => "not_a_diagonal",
            Error::NotDisjoint(..) => "not_disjoint",
            Error::WrongSize { .. } => "wrong_size",
            Error::Degenerate(_) => "degenerate",
            Error::SizeLimit(_) => "size_limit",
            Error::ValidationFailure(_) => "validation_failure",
            Error::VertexNotFound(_) => "vertex_not_found",
            Error::IndexOutOfRange(_) => "index_out_of_range",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
