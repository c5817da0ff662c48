use thiserror::Error;

use crate::symalg::SymalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Symalg(#[from] SymalgError),
    #[error("Weyl group rank {rank} exceeds the enumeration bound {bound}")]
    RankTooLarge { rank: usize, bound: usize },
    #[error("invalid group context: {0}")]
    InvalidContext(String),
    #[error("Satake data live at different places")]
    PlaceMismatch,
    #[error("operation is not defined for kind {0}")]
    UnsupportedKind(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("index {index} is outside the admissible range {range}")]
    IndexOutOfRange { index: usize, range: String },
    #[error("index {0} needs the analytic base case and has no closed form")]
    OutOfRecursionRange(usize),
    #[error("orbit query matches no clause: {0}")]
    UnclassifiedCase(String),
}

pub type Result<T> = std::result::Result<T, Error>;
