use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("digit window mismatch: {0} vs {1} digits")]
    WidthMismatch(usize, usize),

    #[error("digit {digit} is out of range for p = {prime}")]
    DigitOutOfRange { digit: u32, prime: u32 },

    #[error("valuation {0} lies outside the supported range [-64, 64]")]
    ValuationOutOfRange(i64),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not reach tolerance within {0} terms")]
    NonConvergence(usize),

    #[error("statistics: {0}")]
    Statistics(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}
