use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("root order outside field: {order} does not divide conductor {conductor}")]
    RootOrderOutsideField { order: u64, conductor: u64 },
    #[error("invalid conductor {0}: must be a positive multiple of 12")]
    InvalidConductor(u64),
    #[error("not an endomorphism: {0}")]
    NotAnEndomorphism(String),
    #[error("holonomy has infinite order")]
    InfiniteOrder,
    #[error("group order exceeds cap {0}")]
    GroupOrderExceedsCap(usize),
    #[error("field too small: element order {order} does not divide conductor {conductor}")]
    FieldTooSmall { order: u64, conductor: u64 },
    #[error("subvariety not invariant")]
    SubvarietyNotInvariant,
    #[error("divisor component is not of codimension 1")]
    NotCodimensionOne,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// A statement that holds as a theorem failed to verify; always a bug.
    #[error("certificate failure: {0}")]
    Certificate(String),
}

impl Error {
    /// True for violated internal invariants, as opposed to bad input.
    pub fn is_certificate_failure(&self) -> bool {
        matches!(self, Error::Certificate(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
