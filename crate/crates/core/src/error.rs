use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in [2, 2^31]")]
    InvalidModulus(u64),

    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{name}` at byte {pos} (ring has {nvars} variables)")]
    UnknownVariable { name: String, pos: usize, nvars: usize },

    #[error("exponent overflow: {0}")]
    ExponentOverflow(String),

    #[error("variable count {0} outside supported range 1..=8")]
    BadVariableCount(usize),

    #[error("mismatched operands: {0}")]
    Mismatch(String),

    #[error("basis of size {needed} exceeds the budget of {budget}")]
    Capacity { needed: u128, budget: u64 },

    #[error("f = {0} has a nonzero constant term; pairs require f in the maximal ideal")]
    UnitElement(String),

    #[error("f is the zero polynomial")]
    ZeroPolynomial,

    #[error("parameter {0} is not of the form a/p^c")]
    NonGridParameter(String),

    #[error("table needs at least {needed} samples, has {have}")]
    TableTooSmall { needed: usize, have: usize },

    #[error("dimension {got} exceeds the supported maximum {max}")]
    DimensionTooLarge { got: usize, max: usize },

    #[error("I^{power} has {count} minimal generators, more than the limit {limit}")]
    GeneratorExplosion { power: u64, count: usize, limit: usize },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("invalid monomial ideal: {0}")]
    InvalidIdeal(String),
}
