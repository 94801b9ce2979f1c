use thiserror::Error;

use crate::ring::Ring;

/// Errors raised by ring, series and transform operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },

    #[error("{0} is not invertible")]
    NotInvertible(String),

    #[error("{value} is not divisible by {divisor}")]
    NotDivisible { value: String, divisor: String },

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("insufficient input: {0}")]
    InsufficientInput(String),

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("operation not supported over {0}")]
    RingUnsupported(Ring),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("integrality violated: {0}")]
    IntegralityViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
