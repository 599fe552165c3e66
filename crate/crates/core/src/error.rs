use thiserror::Error;

/// Errors produced by the design library.
#[derive(Debug, Error)]
pub enum Error {
    /// A structural invariant failed (normalization, hermiticity, positivity, weights).
    #[error("validation failed: {0}")]
    Validation(String),

    /// Dimensions of the operands do not fit together.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// The operation is not defined for this input.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The request exceeds a hard capacity limit (factorial or exponential growth).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An ensemble failed the design check required before it may be used
    /// as a measurement; carries the diagnostic residual.
    #[error("ensemble is not a verified {t}-design: residual delta = {delta:.3e}")]
    UnverifiedDesign { t: usize, delta: f64 },

    /// Two independent construction paths disagree; indicates corrupted data.
    #[error("construction inconsistency: {0}")]
    Inconsistent(String),

    /// Internal bookkeeping error.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
