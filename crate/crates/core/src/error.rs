use thiserror::Error;

/// Errors produced by the symbolic and numeric layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the range where the object is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two operands were built for different Dunkl parameters.
    #[error("parameter mismatch: {0} vs {1}")]
    ParamMismatch(String, String),

    /// The leading coefficient needed for inversion is zero.
    #[error("not invertible: {0}")]
    NotInvertible(String),

    /// A series was truncated below the order the request needs.
    #[error("precision error: need order {needed}, have {available}")]
    Precision { needed: usize, available: usize },

    /// A linear system without a unique solution.
    #[error("singular system: {0}")]
    Singular(String),

    #[error("unknown family: {0}")]
    UnknownFamily(String),

    /// A functional with no exact action was applied exactly.
    #[error("no exact action for {0}; use the numeric path")]
    UnsupportedExact(String),

    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e}")]
    Quadrature { estimate: f64, error: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
