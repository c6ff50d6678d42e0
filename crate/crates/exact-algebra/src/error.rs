use thiserror::Error;

/// Errors surfaced by ring construction, element arithmetic, and the matrix
/// algorithms built on top of them.  Every failure is a structured value; no
/// algorithm in this crate panics on bad mathematical input.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("element is not a unit in {ring}")]
    NotAUnit { ring: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix dimensions {0}x{1} and {2}x{3} are incompatible")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("matrix is not unipotent")]
    NotUnipotent,

    #[error("characteristic {char_p} is too small for size {size}; series coefficients are not invertible")]
    CharacteristicTooSmall { char_p: u64, size: usize },

    #[error("minimal polynomial is not separable; Newton correction is singular")]
    NotSeparable,

    #[error("ring construction: {0}")]
    BadRing(String),

    #[error("operation requires a field, got {0}")]
    NotAField(String),

    #[error("operation unsupported over {ring}: {what}")]
    Unsupported { ring: String, what: String },

    #[error("parse error in {text:?}: {msg}")]
    Parse { text: String, msg: String },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("budget exceeded: {what} needs {needed}, limit {limit}")]
    Budget {
        what: String,
        needed: u64,
        limit: u64,
    },
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
