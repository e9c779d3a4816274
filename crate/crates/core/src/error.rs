use crate::diagram::ChordId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed code: {0}")]
    MalformedCode(String),
    #[error("chord {0} has opposite signs on its two ends")]
    SignMismatch(ChordId),
    #[error("unknown chord {0}")]
    UnknownChord(ChordId),
    #[error("move instance does not apply: {0}")]
    InvalidInstance(String),
    #[error("expected {expected} unicursal components, found {found}")]
    WrongComponentCount { expected: usize, found: usize },
    #[error("expected arity {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("operands live in different modules")]
    Mismatch,
    #[error("diagram is not in filtration level {0}")]
    NotInFiltrationLevel(u32),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(usize),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}
