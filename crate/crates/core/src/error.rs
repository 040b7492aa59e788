use thiserror::Error;

/// Errors raised by the numeric and combinatorial routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("arguments are not coprime: gcd({a}, {k}) != 1")]
    NotCoprime { a: i64, k: u64 },
    #[error("modulus {k} is not in the required residue class ({class})")]
    WrongResidueClass { k: u64, class: &'static str },
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("table covers indices up to {available}, but {needed} is required")]
    Coverage { needed: u64, available: u64 },
    #[error("the zero polynomial has no well-defined root set")]
    ZeroPolynomial,
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("root is not bracketed on [{lo}, {hi}] for m = {m}")]
    Bracket { m: u32, lo: String, hi: String },
    #[error("allocation of {0} coefficients failed")]
    Allocation(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
