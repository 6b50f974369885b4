use thiserror::Error;

/// Errors raised by the arithmetic, sequence and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: String },

    #[error("denominator {denominator} is divisible by the prime {prime}")]
    DenominatorNotCoprime { denominator: String, prime: u64 },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("residue moduli differ: {left} vs {right}")]
    ModulusMismatch { left: String, right: String },

    #[error("moduli are not pairwise coprime")]
    NonCoprimeModuli,

    #[error("no residues supplied")]
    EmptyResidues,

    #[error("recurrence step at n = {n} does not divide exactly")]
    NonIntegerStep { n: usize },

    #[error("no integer recurrence fit for {family}: {reason}")]
    NoIntegerFit { family: String, reason: String },

    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    #[error("index {index} exceeds the configured cap {cap}")]
    IndexCapExceeded { index: usize, cap: usize },

    #[error("CRT modulus {product} is below the required {required}")]
    InsufficientPrimes { product: String, required: String },
}

pub type Result<T> = std::result::Result<T, Error>;
