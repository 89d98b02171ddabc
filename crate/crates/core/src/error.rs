use thiserror::Error;

use crate::diagram::Pos;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("column {column} is out of range for a diagram with {columns} columns")]
    ColumnOutOfRange { column: usize, columns: usize },
    #[error("duplicate entry at column {}, degree {}", .0.column, .0.degree)]
    DuplicateEntry(Pos),
    #[error("column counts differ: {0} vs {1}")]
    ColumnCountMismatch(usize, usize),
    #[error("column {0} has no nonzero entry")]
    EmptyColumn(usize),
    #[error("not strictly increasing: {0:?}")]
    NotStrictlyIncreasing(Vec<i64>),
    #[error("degree sequence must start at 0, got {0:?}")]
    FirstEntryNonzero(Vec<i64>),
    #[error("degree sequences have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("degree tuple is empty")]
    EmptyTuple,
    #[error("degree {0} is not positive")]
    NonPositiveDegree(i64),
    #[error("negative entry at column {}, degree {}", .0.column, .0.degree)]
    NegativeEntry(Pos),
    #[error("MassEliminationUnsupported: step {step} of the base decomposition eliminates {count} positions")]
    MassEliminationUnsupported { step: usize, count: usize },
    #[error("ANextTooSmall: a_next = {a_next} is smaller than the largest base degree {a_c}")]
    ANextTooSmall { a_next: i64, a_c: i64 },
    #[error(
        "BaseTooShort: the recursive algorithm needs a base of codimension at least 2, got {0}"
    )]
    BaseTooShort(usize),
    #[error("DegenerateSequence at step {step}: {reason}")]
    DegenerateSequence { step: usize, reason: String },
    #[error("InternalInconsistency: {0}")]
    InternalInconsistency(String),
}
