use thiserror::Error;

/// Errors raised by the decomposition engine and its oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials belong to different contexts")]
    ContextMismatch,

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("constant-class: polynomial has no main variable")]
    ConstantClass,

    #[error("divisor has degree 0 in {0}")]
    ZeroDegreeDivisor(String),

    #[error("resultant of two zero polynomials")]
    ZeroResultant,

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("bad prime {0}: divides a coefficient denominator")]
    BadPrime(u64),

    #[error("unknown indeterminate '{0}'")]
    UnknownIndeterminate(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("empty system")]
    EmptySystem,

    #[error("not a triangular set")]
    NotTriangular,

    #[error("not a zero-dimensional regular chain over the given variables")]
    NotZeroDimensionalRegular,

    #[error("variable list does not match the main variables of the triangular set")]
    VarsMismatch,

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("enumeration budget exceeded: {required} points needed, budget is {budget}; use a smaller prime or fewer variables")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("B vanishes everywhere sampled")]
    RduVanishes,

    #[error("no trials")]
    NoTrials,

    #[error("invalid oracle configuration: {0}")]
    Config(String),

    #[error("{0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
