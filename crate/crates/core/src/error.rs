use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("expected {expected} arguments, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("cannot add an element of arity {0} degree {1} to one of arity {2} degree {3}")]
    GradingMismatch(usize, i64, usize, i64),
    #[error("malformed tree: {0}")]
    Malformed(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("label {0} is outside the alphabet: {1}")]
    Alphabet(String, String),
    #[error("{0} is not linear: {1}")]
    NotLinear(String, String),
    #[error("unknown presentation `{0}`")]
    UnknownPresentation(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("json: {0}")]
    Json(String),
    #[error("filtration did not decrease at {0}")]
    Filtration(String),
}

pub type Result<T> = std::result::Result<T, OpError>;
