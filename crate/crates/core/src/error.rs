use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot factor zero")]
    FactorZero,
    #[error("valuation of zero")]
    ValuationOfZero,
    #[error("not a unit at {0}")]
    NotAUnit(String),
    #[error("zero element has no inverse or character")]
    ZeroElement,
    #[error("n must divide q-1 (n = {n}, q = {q})")]
    ModulusDoesNotDivide { n: u64, q: u64 },
    #[error("zeta does not have exact order {0}")]
    BadZeta(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order too large: {0}")]
    FieldTooLarge(String),
    #[error("polynomial is not monic irreducible: {0}")]
    NotIrreducible(String),
    #[error("elements live in different fields")]
    FieldMismatch,
    #[error("γ must be unramified at {0}")]
    RamifiedGamma(String),
    #[error("symbol argument is zero")]
    ZeroSymbolArgument,
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("class does not vanish on fiber")]
    NotVanishingOnFiber,
    #[error("cochains are not comparable: {0}")]
    CochainShape(String),
    #[error("characteristic must be odd, got q = {0}")]
    EvenCharacteristic(u64),
    #[error("fiber is smooth at {0}")]
    SmoothFiber(String),
    #[error("non-standard local model at {0}")]
    NonStandard(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
