use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("alphabet has {size} variables, enumeration bound is {bound}")]
    BoundExceeded { size: usize, bound: usize },

    #[error("formula list has {len} entries, Q-combination cap is {cap}")]
    TooManyFormulae { len: usize, cap: usize },

    /// Revision by a formula without models. `step` is the zero-based
    /// position in the sequence when the failure happened inside one.
    #[error("{}", inconsistent_message(*.step))]
    InconsistentRevision { step: Option<usize> },

    #[error("invalid doxastic state: {0}")]
    InvalidState(String),

    #[error("model width {got} does not match alphabet width {expected}")]
    WidthMismatch { expected: usize, got: usize },

    #[error("step index {index} out of range for a sequence of {len} steps")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("unsupported operator `{0}` in this context")]
    UnsupportedOperator(String),

    #[error("alphabet overlap: {0}")]
    AlphabetOverlap(String),

    #[error("clause {clause} at line {line} is not Horn: more than one positive literal")]
    NotHorn { line: usize, clause: usize },
}

fn inconsistent_message(step: Option<usize>) -> String {
    match step {
        Some(i) => format!("inconsistent revision at step {}", i + 1),
        None => "inconsistent revision: the payload has no models".to_string(),
    }
}

impl Error {
    /// Parse-level failures, as opposed to semantic ones.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::UnknownVariable(_) | Error::NotHorn { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
