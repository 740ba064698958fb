use thiserror::Error;

use crate::partition::Partition;

pub type Result<T> = std::result::Result<T, FihlError>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FihlError {
    #[error("could not parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("{inner} is not contained in {outer}")]
    NotContained { inner: Partition, outer: Partition },

    #[error("{outer}/{inner} is not a horizontal strip")]
    NotHorizontalStrip { outer: Partition, inner: Partition },

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("label {0} does not occur in the tableau")]
    UnknownLabel(usize),

    #[error("generator index {index} out of range 1..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("pair violates the (gamma, delta) conditions: {0}")]
    CodecCondition(String),

    #[error("pair ({lambda}, {mu}) is not critical")]
    NotCritical { lambda: Partition, mu: Partition },

    #[error("non-integral multiplicity {mult} for ({lambda}, {mu})")]
    NonIntegralMultiplicity { lambda: Partition, mu: Partition, mult: String },

    #[error("negative multiplicity {mult} for ({lambda}, {mu})")]
    NegativeMultiplicity { lambda: Partition, mu: Partition, mult: i64 },

    #[error("b = {0} is beyond desk scale for direct fixed-point counting (b <= 7)")]
    OutOfScale(usize),

    /// A mathematical invariant failed; this is always a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl FihlError {
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            FihlError::Invariant(_)
                | FihlError::NonIntegralMultiplicity { .. }
                | FihlError::NegativeMultiplicity { .. }
        )
    }
}
