use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial division left a nonzero remainder")]
    NonExactDivision,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("genus must be at least 2, got {0}")]
    InvalidGenus(u32),

    #[error("invalid admissible datum: {0}")]
    InvalidDatum(String),

    #[error("Burnside average for {context} is not an integer polynomial")]
    NonIntegralBurnside { context: String },

    #[error("compactified character {chi} is not palindromic of degree {top}")]
    NonPalindromic { chi: String, top: usize },

    #[error("coefficient of L^{exponent} in {chi} breaks the alternating sign pattern")]
    SignViolation { chi: String, exponent: usize },

    #[error("negative coefficient in {0}")]
    NegativeCoefficient(String),

    #[error("stable tree enumeration for n = {n} exceeds the cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),

    #[error("missing sector record: {0}")]
    MissingRecord(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
