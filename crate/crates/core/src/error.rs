use thiserror::Error;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("auxiliary symbol {0} already present")]
    SymbolCollision(String),
    #[error("residual pole at {0} after parameter exclusion")]
    ResidualPole(String),
    #[error("reconstruction failure: {0}")]
    Reconstruction(String),
    #[error("truncation overflow: {0}")]
    TruncationOverflow(String),
    #[error("singular Gram matrix at weight {0}")]
    SingularGram(u32),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inconsistent tags: {0}")]
    InconsistentTags(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
