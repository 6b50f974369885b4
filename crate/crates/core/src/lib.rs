//! Exact arithmetic for Apéry-like sequences and their supercongruences.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`]: big integers, rationals, prime-power residues, Legendre
//!   symbol, symmetric CRT.
//! * [`combinatorics`]: cached binomials and harmonic power sums.
//! * [`bernoulli`]: Bernoulli numbers (`B_1 = -1/2`) and polynomials.
//! * [`sequences`]: the eight sequence families, recurrences and fitting.
//! * [`congruence`]: verifiers for the supercongruences and lemmas, plus
//!   recovery of conjectured constants from per-prime residues.
//!
//! All caches are process-wide memo tables behind read-write locks; every
//! value they hand out equals the pure function of its arguments.

pub mod arith;
pub mod bernoulli;
pub mod combinatorics;
pub mod congruence;
pub mod error;
pub mod sequences;

pub use arith::{Integer, Modulus, Rational, Residue};
pub use congruence::{CongruenceReport, RecoveryReport, Statement};
pub use error::{Error, Result};
pub use sequences::{RecurrenceShape, SequenceFamily, ShapeKind};

/// Largest sequence index a verifier is allowed to request by default.
pub const DEFAULT_INDEX_CAP: usize = 2000;
