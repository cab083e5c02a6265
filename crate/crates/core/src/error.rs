use thiserror::Error;

/// Errors raised by the exact verification toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("degenerate simplex: {0}")]
    Geometry(String),

    #[error("invalid facet index {index} for a {dim}-simplex")]
    InvalidFacet { index: usize, dim: usize },

    #[error("pole: a_{i} + b_{j} = 0 in Cauchy matrix")]
    Pole { i: usize, j: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("counterexample check ({step}) failed: {detail}")]
    Counterexample { step: &'static str, detail: String },

    #[error("refused: {0}")]
    Refused(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
