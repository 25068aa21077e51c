use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("qubit count {0} outside supported range 1..={1}")]
    QubitRange(usize, usize),

    #[error("qubit index {index} out of range for {num_qubits}-qubit state")]
    QubitIndex { index: usize, num_qubits: usize },

    #[error("control and target qubit are both {0}")]
    SameQubit(usize),

    #[error("size {0} exceeds the supported limit of {1}")]
    TooLarge(usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cost function returned non-finite value {value} at evaluation {evaluation}")]
    NonFiniteCost { value: f64, evaluation: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
