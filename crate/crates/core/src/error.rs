use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("monomial arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("exponent exceeds guard {limit}")]
    ExponentGuard { limit: u32 },
    #[error("Groebner basis step guard exceeded after {reductions} reductions (partial basis size {basis_size})")]
    GuardExceeded { reductions: usize, basis_size: usize },
    #[error("exact division failed: {0}")]
    DivisionFailure(String),
    #[error("ideal is not m-primary: {0}")]
    NotMPrimary(String),
    #[error("ideal is not m-primary at the origin within order bound {bound}")]
    NotLocallyMPrimary { bound: u32 },
    #[error("monomial fast path called on a non-monomial ideal")]
    NonMonomialInput,
    #[error("colon chain did not stabilize within {cap} steps")]
    StabilizationNotDetected { cap: u32 },
    #[error("parameters do not form a system of parameters inside the ideal: {0}")]
    ParamsNotSystemOfParameters(String),
    #[error("the candidate reduction is not contained in the ideal")]
    JNotContained,
    #[error("not a reduction within bound {bound}")]
    NotAReductionWithinBound { bound: u32 },
    #[error("no minimal reduction found; seeds tried: {seeds:?}")]
    ReductionNotFound { seeds: Vec<u64> },
    #[error("no tame superficial sequence found; seeds tried: {seeds:?}")]
    SearchExhausted { seeds: Vec<u64> },
    #[error("Hilbert polynomial fit not stable: {0}")]
    FitNotStable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
