use thiserror::Error;

use crate::rule::Cell;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cell {0} is outside the configuration domain")]
    OutOfDomain(Cell),

    #[error("configurations are defined on different domains")]
    DomainMismatch,

    #[error("Wolfram number {0} is outside 0..=255")]
    OutOfRange(i64),

    #[error("rule is not elementary (need q = 2, d = 1, neighborhood (-1, 0, 1))")]
    NotElementary,

    #[error("rules use different neighborhoods")]
    NeighborhoodMismatch,

    #[error("rules use different alphabets ({0} vs {1} states)")]
    AlphabetMismatch(usize, usize),

    #[error("operation requires a one-dimensional rule, got dimension {0}")]
    NotOneDimensional(usize),

    #[error("enumeration needs {required} {what}, cap is {cap}")]
    ResourceCapExceeded {
        what: &'static str,
        /// Saturates at `u128::MAX`.
        required: u128,
        cap: u64,
    },

    #[error("neighborhood does not contain the origin")]
    CenterNotInNeighborhood,

    #[error("cell 0 is ahead of a neighbor")]
    CenterAhead,

    #[error("cell 0 is behind a neighbor")]
    CenterBehind,

    #[error("lattice of size {size} is smaller than the neighborhood extent {required}")]
    LatticeTooSmall { size: usize, required: usize },

    #[error("invalid rule: {0}")]
    InvalidRule(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
