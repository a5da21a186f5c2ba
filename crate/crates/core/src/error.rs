use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("argument {0} outside the domain")]
    Domain(f64),
    #[error("invalid generator: {0}")]
    Generator(String),
    #[error("invalid expression: {0}")]
    Expr(String),
    #[error("summands {0} and {1} touch, the lower one is a proper subnorm and the upper one has zero divisors")]
    Adjacency(usize, usize),
    #[error("exponential pieces need the float backend")]
    ExactExponential,
    #[error("{0} is not in the range of f")]
    NotInRange(f64),
    #[error("expected a proper t-subnorm, got a t-norm")]
    IsTNorm,
    #[error("expected an ordinal sum")]
    NotOrdinalSum,
    #[error("summand index {0} out of range")]
    Index(usize),
    #[error("{0} is not associative, so it is not a t-subnorm")]
    NotAssociative(String),
    #[error("gap system inconsistent: {0}")]
    Gaps(String),
}

pub type Result<T> = core::result::Result<T, Error>;
