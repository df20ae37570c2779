use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different ground fields")]
    DescriptorMismatch,
    #[error("operands belong to different differential polynomial rings")]
    RingMismatch,
    #[error("operands use different rankings")]
    RankingMismatch,
    #[error("expected a polynomial outside the ground field")]
    ConstantPolynomial,
    #[error("expected a nonzero polynomial")]
    ZeroPolynomial,
    #[error("the set is not autoreduced under the given ranking")]
    NotAutoreduced,
    #[error("polynomial is not irreducible over the ground field")]
    NotIrreducible,
    #[error("polynomial is not monic in its leader")]
    NotMonic,
    #[error("element is not algebraic over the requested base: {0}")]
    NotAlgebraic(String),
    #[error("malformed pair: {0}")]
    MalformedPair(String),
    #[error("order of q*h must be lower than the order of p")]
    OrderTooHigh,
    #[error("step budget of {0} exhausted")]
    BudgetExceeded(u64),
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid ranking: {0}")]
    InvalidRanking(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
