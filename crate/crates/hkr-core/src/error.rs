use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("{op} is not defined at level {level}")]
    Level { op: &'static str, level: isize },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("expected degree {expected}, found {found}")]
    Degree { expected: usize, found: usize },
    #[error("multilinear table is not antisymmetric")]
    NotAntisymmetric,
    #[error("slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("generator {index} is not a derivation: {reason}")]
    NotDerivation { index: usize, reason: String },
    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("action tables do not define a bimodule: {0}")]
    InvalidBimodule(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Parse errors are input problems; everything else is a shape problem.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
