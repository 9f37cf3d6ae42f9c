//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Scalar division by zero.
    #[error("division by zero")]
    ZeroDenominator,

    /// Polynomial division by the zero polynomial.
    #[error("polynomial division by zero polynomial")]
    DivisionByZeroPoly,

    /// An exact polynomial division left a nonzero remainder.
    #[error("exact division left a nonzero remainder: {0}")]
    NonzeroRemainder(String),

    /// Determinant of a non-square matrix was requested.
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    /// A set literal or set construction was malformed.
    #[error("invalid set: {0}")]
    InvalidSet(String),

    /// Parameters violate a family or measure precondition.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A required set component is empty.
    #[error("empty set component: {0}")]
    EmptyComponent(String),

    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// No certified tail bound could be established for a truncated sum.
    #[error("tail bound unavailable: {0}")]
    TailBoundUnavailable(String),

    /// Two routes that must agree produced different results. This is a bug
    /// in the calculator, never a property of the inputs.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
