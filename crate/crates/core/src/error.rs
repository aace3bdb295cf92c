use thiserror::Error;

use crate::incidence::LineId;
use crate::labeling::Inconsistency;
use crate::sigma::ClassFailure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line index {index} out of range for a structure with {line_count} lines")]
    IndexOutOfRange { index: usize, line_count: usize },

    #[error("structure has {line_count} lines, above the supported maximum of {max}")]
    Capacity { line_count: usize, max: usize },

    #[error("duplicate line label {0:?}")]
    DuplicateLabel(String),

    #[error("line {0} is declared skew to itself")]
    SelfSkew(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("incidence on sigma({a}, {b}) is not an equivalence with two classes: {failure}")]
    NotTwoClasses {
        a: LineId,
        b: LineId,
        failure: ClassFailure,
    },

    #[error("labeling is inconsistent: {0}")]
    LabelInconsistency(Inconsistency),

    #[error("no {kind} of the model contains both line {a} and line {b}")]
    MissingElement {
        kind: &'static str,
        a: LineId,
        b: LineId,
    },

    #[error("unsupported field order {0}; supported primes are 2, 3, 5 and 7")]
    UnsupportedField(u32),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
