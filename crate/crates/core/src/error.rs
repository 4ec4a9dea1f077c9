use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subspace containment violated: basis vector {index} of B is not in Z")]
    NotContained { index: usize },

    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("filtration order {needed} exceeds truncation order {limit}")]
    OrderOverflow { needed: usize, limit: usize },

    #[error("logarithmic derivation module not certified free; generators: {generators:?}")]
    NotCertifiedFree { generators: Vec<String> },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("inconsistent structure: {0}")]
    Inconsistent(String),

    #[error("truncation not compatible with the differential: {0}")]
    Filtration(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}
