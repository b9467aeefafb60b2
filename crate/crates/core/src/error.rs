use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("directional derivative along the zero vector")]
    InvalidDirection,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable x{index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("degenerate condition: {0}")]
    DegenerateCondition(String),
    #[error("condition vanishes on every generator; its kernel is the whole algebra")]
    NotAProperCondition,
    #[error("invalid filtration at level {level}: {reason}")]
    InvalidFiltration { level: usize, reason: String },
    #[error("redundant condition at level {level}: it vanishes on the whole level algebra")]
    RedundantCondition { level: usize },
    #[error("invalid point set: {0}")]
    InvalidPointSet(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
