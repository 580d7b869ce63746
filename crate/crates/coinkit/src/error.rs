use thiserror::Error;

/// Errors reported by instance construction, convolution kernels and oracles.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("value at position {position} is {value}, expected a positive integer")]
    NonPositiveValue { position: usize, value: i64 },
    #[error("target {0} is negative")]
    NegativeTarget(i64),
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("binary cost entry at position {0} is neither 1 nor infinity")]
    NotBinaryCost(usize),
    #[error("oracle budget exceeded: {work} > {budget}")]
    OracleBudgetExceeded { work: u64, budget: u64 },
    #[error("coin values have gcd {0}, expected 1")]
    GcdNotOne(u64),
    #[error("input {value} exceeds brute-force bound {bound}")]
    BruteForceBound { value: u64, bound: u64 },
    #[error("no witness: target {0} is infeasible")]
    InfeasibleTarget(u64),
    #[error("cost array is not a valid min-coin table near index {0}")]
    CorruptCostArray(usize),
    #[error("need at least {need} values, got {got}")]
    TooFewValues { need: usize, got: usize },
    #[error("profit arithmetic overflowed 64 bits")]
    ProfitOverflow,
    #[error("dictionary word {0} is empty")]
    EmptyWord(usize),
    #[error("truncation length must be positive")]
    ZeroTruncation,
    #[error("path mark quota must be positive")]
    ZeroPathQuota,
    #[error("{0} is not a power of two")]
    NotPowerOfTwo(u64),
    #[error("group member {value} outside ({lo}, {hi}]")]
    GroupMemberOutOfRange { value: u64, lo: u64, hi: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
