use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("group is abelian, so its non-commuting graph is empty")]
    AbelianGroup,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("a complete multipartite graph needs at least two parts")]
    TooFewParts,
    #[error("spectrum kind mismatch: expected {0}")]
    KindMismatch(&'static str),
    #[error("group order {order} exceeds the cap {cap}")]
    TooLarge { order: u128, cap: u128 },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}
