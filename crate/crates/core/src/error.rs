use std::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A matrix-vector or matrix-matrix product was attempted with
    /// incompatible shapes.
    DimMismatch {
        rows: usize,
        cols: usize,
        operand: usize,
    },
    /// Weighting was requested on an affine state with l1 norm zero.
    DegenerateAffineState,
    /// Two bit strings that must have equal length do not.
    LengthMismatch { left: usize, right: usize },
    /// An operation that needs at least one bit got an empty string.
    EmptyBitString,
    /// A builder or model constructor was given parameters that violate
    /// its preconditions.
    InvalidParams(String),
    /// A sweep would exceed the configured evaluation budget.
    BudgetExceeded { required: u64, cap: u64 },
    /// An input symbol is outside the model alphabet.
    UnknownSymbol(char),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimMismatch {
                rows,
                cols,
                operand,
            } => write!(
                f,
                "dimension mismatch: {rows}x{cols} matrix applied to operand of size {operand}"
            ),
            Error::DegenerateAffineState => {
                write!(f, "degenerate affine state: l1 norm is zero")
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
            Error::EmptyBitString => write!(f, "bit string must be non-empty"),
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::BudgetExceeded { required, cap } => write!(
                f,
                "sweep budget exceeded: {required} evaluations required, cap is {cap}"
            ),
            Error::UnknownSymbol(c) => write!(f, "symbol {c:?} is outside the alphabet"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
