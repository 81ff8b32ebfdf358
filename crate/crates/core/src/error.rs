use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("ring order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: u128, max: usize },

    #[error("element index {index} out of range for a ring of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("no element of exact multiplicative order {0}")]
    NoElementOfOrder(usize),

    #[error("{0} is not a unit")]
    NotAUnit(usize),

    #[error("subgroup violates the unit-difference condition: {0} - 1 is not a unit")]
    UnitDifference(usize),

    #[error("divisibility precondition fails: {0}")]
    Divisibility(String),

    #[error("function is not of Type-A: {0}")]
    NotTypeA(String),

    #[error("function is not zero-difference balanced (spectrum {0:?})")]
    NotBalanced(Vec<usize>),

    #[error("change point is inside its own block: a0 = {a0}, a = {a}")]
    SameBlock { a0: usize, a: usize },

    #[error("additive group is not cyclic (digit radices {0:?})")]
    NotCyclic(Vec<usize>),

    #[error("element {0} does not generate the additive group")]
    NotAGenerator(usize),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("duplicate codeword at positions {0} and {1}")]
    DuplicateWord(usize, usize),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("symbol {symbol} outside the alphabet of size {q}")]
    SymbolOutOfRange { symbol: usize, q: usize },

    #[error("blocks overlap at element {0}")]
    OverlappingBlocks(usize),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
