use thiserror::Error;

/// Error cases surfaced by the exact-arithmetic engine.
///
/// Every operation that can fail returns one of these; nothing panics on
/// user-supplied shapes or labels.
#[derive(Debug, Error)]
pub enum CoreError {
    /// Two objects with different ambient shapes were combined.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// An operator fed to a kernel or matrix routine does not shift total
    /// degree by a uniform amount.
    #[error("inhomogeneous operator: {0}")]
    InhomogeneousOperator(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Invalid shape, degree, or rank argument (e.g. n = 0).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A dimension formula was asked for a weight with non-integer entries
    /// after shift removal.
    #[error("non-integer weight: {0}")]
    NonIntegerWeight(String),

    /// A partition violates the orthogonal column condition for the given n.
    #[error("inadmissible label: {0}")]
    InadmissibleLabel(String),

    /// The isotypic engine could not consistently identify a component.
    #[error("identification failed: {0}")]
    Identification(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;
