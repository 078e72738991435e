use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} must be an odd prime")]
    EvenPrime(u64),

    #[error("n1 and n2 must be distinct (both are {0})")]
    EqualPrimes(u64),

    #[error("gcd(n1-1, n2-1) = {0}, need 6")]
    UnsupportedOrder(u64),

    #[error("gcd(n, p) = {gcd} for n = {n}, p = {p}; need gcd(n, p) = 1")]
    NotCoprime { n: u64, p: u64, gcd: u64 },

    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: u64, m: u64 },

    #[error("{base} does not generate the unit group modulo {modulus}")]
    NotGenerator { base: u64, modulus: u64 },

    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u64, right: u64 },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("not divisible: remainder has degree {remainder_degree}")]
    NotDivisible { remainder_degree: usize },

    #[error("{n} does not divide the order of the multiplicative group of GF({p}^{m})")]
    NoRootOfUnity { p: u64, m: u32, n: u64 },

    #[error("{what} = {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    #[error("the zero code (k = 0) has no minimum distance")]
    ZeroCode,

    #[error("omega factors are not defined over the base field: q lies in W_{0}, not W_0")]
    NotBaseFieldStable(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("verification failed [{check}]: {detail}")]
    Verification { check: String, detail: String },
}

impl Error {
    pub(crate) fn verification(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Verification {
            check: check.into(),
            detail: detail.into(),
        }
    }

    /// Process exit code for the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification { .. }
            | Error::NotDivisible { .. }
            | Error::NotBaseFieldStable(_) => 3,
            Error::CapExceeded { .. } => 4,
            _ => 2,
        }
    }
}
