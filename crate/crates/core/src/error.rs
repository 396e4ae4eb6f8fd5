use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient dimension must be at least 1")]
    EmptyAmbientSpace,

    #[error("operation is undefined for the zero ideal")]
    ZeroIdeal,

    #[error("operation is undefined for the unit ideal")]
    UnitIdeal,

    #[error("ideal is not m-primary (its zero locus is larger than the origin); use the ttype invariant instead")]
    NotMPrimary,

    #[error("exponent must be at least 1")]
    ZeroExponent,

    #[error("weight vector entries must be nonnegative: entry {index} is {value}")]
    NegativeWeight { index: usize, value: String },

    #[error("weight vector must have a strictly positive entry")]
    ZeroWeight,

    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    #[error("generator {index} does not vanish at the origin")]
    NonVanishingGenerator { index: usize },

    #[error("generator {index} is not a monomial")]
    NotMonomial { index: usize },

    #[error("polynomial has no terms")]
    EmptyPolynomial,

    #[error("arc is invalid: {0}")]
    InvalidArc(String),

    #[error("jet truncations differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("truncation order {0} is too small to certify the pullback order")]
    TruncationExhausted(usize),

    #[error("generic coefficients failed to reproduce the expected orders after {attempts} draws")]
    GenericityFailure { attempts: usize },

    #[error("linear program for {0} did not reach an optimum")]
    SolverFailure(String),

    #[error("theorem violation in {check}: {detail}")]
    TheoremViolation { check: String, detail: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
