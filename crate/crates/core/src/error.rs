use thiserror::Error;

use crate::slope::SlopeRatio;

/// Errors produced while building images or computing moments.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentError {
    #[error("pixel buffer length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid image dimensions {width}x{height} (each side must be in 1..={max})")]
    InvalidDimensions { width: usize, height: usize, max: usize },

    #[error("invalid slope {a}:{b}: {reason}")]
    InvalidSlope { a: i64, b: i64, reason: &'static str },

    #[error("order {order} out of range {min}..={max}")]
    OrderOutOfRange { order: u32, min: u32, max: u32 },

    #[error("order-{order} moments of a {width}x{height} image may overflow 128-bit accumulators")]
    Overflow { order: u32, width: usize, height: usize },

    #[error("expected projection with slope {expected}, got {actual}")]
    SlopeMismatch { expected: SlopeRatio, actual: SlopeRatio },

    #[error("expected a 1-D moment of order {expected}, got order {actual}")]
    MomentOrderMismatch { expected: u32, actual: u32 },

    #[error("invalid slope plan: {0}")]
    InvalidPlan(String),

    #[error("image has zero total mass")]
    EmptyImage,

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = MomentError> = std::result::Result<T, E>;
