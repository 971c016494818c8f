use alloc::string::String;

use crate::lp::LpStatus;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("constellation order must be in [2, {max}], got {order}")]
    InvalidOrder { order: usize, max: usize },

    #[error("quaternary digit {0} is outside [0:3]")]
    DigitOutOfRange(usize),

    #[error("{what}: expected length {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("real expansion has odd length {0}")]
    OddLength(usize),

    #[error("variable {index} has lower bound {lower} above upper bound {upper}")]
    InvalidBounds {
        index: usize,
        lower: f64,
        upper: f64,
    },

    #[error("{what} contains a non-finite value")]
    NonFinite { what: &'static str },

    #[error("channel matrix is rank deficient (HH^H pivot {pivot:e})")]
    RankDeficient { pivot: f64 },

    #[error("exhaustive enumeration over 2^{dimension} sign vectors exceeds the guard of 2^{max}")]
    EnumerationTooLarge { dimension: usize, max: usize },

    #[error("unknown precoding method `{0}`")]
    UnknownMethod(String),

    #[error("LP relaxation failed with status {status:?}\n{dump}")]
    LpFailed { status: LpStatus, dump: String },
}
