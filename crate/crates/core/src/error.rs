use thiserror::Error;

/// Errors raised by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The requested claim does not hold for the given parameters.
    #[error("certification error: {0}")]
    Certification(String),

    /// A bounded search ran out of room. Never a proof of nonexistence.
    #[error("bounded search exhausted: {0}")]
    SearchExhausted(String),

    #[error("capacity error: {requested} exceeds sieve ceiling {ceiling}")]
    Capacity { requested: u64, ceiling: u64 },

    #[error("unsupported ring Z[sqrt(-{0})]: only d = 1 or d = 2")]
    UnsupportedRing(u64),

    #[error("band {n} contains no prime-element norm")]
    BandEmpty { n: u32 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors that come from running out of a search budget.
    pub fn is_exhaustion(&self) -> bool {
        matches!(self, Error::SearchExhausted(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
