//! Error type shared by the algebra operations.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    /// Two non-scalar operands of different arities were combined.
    /// Variable identification across arities is ambiguous, so nothing
    /// is widened implicitly.
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    /// The exponential action is only defined on univariate functions.
    #[error("exponential action requires arity 1, got {0}")]
    ExponentialArity(usize),

    /// A custom kernel violated one of the bottoming identities.
    #[error("invalid product rule {name:?}: {reason}")]
    InvalidRule { name: String, reason: String },
}
