//! Congruence verifiers and conjectural-constant recovery.
//!
//! Every verifier reduces both sides of a congruence into the same
//! [`Modulus`] and reports whether the residues coincide. Rational right-hand
//! sides are kept exact until the final reduction.

mod conjectures;
mod lemmas;
mod theorems;

use std::fmt;

use serde::Serialize;

use crate::arith::{is_prime, Modulus, Residue};
use crate::error::{Error, Result};
use crate::sequences::SequenceFamily;

pub use conjectures::{
    conjecture_of, conjecture_table, recover_constant, verify_conjecture, verify_conjecture_with,
    Conjecture, PrimeResidue, RecoveryReport, SkipReason, SkippedPrime, DEFAULT_MAGNITUDE_BOUND,
};
pub use lemmas::{
    verify_cc13_cc14, verify_cc8, verify_cc9, verify_harmonic, verify_wolstenholme_binomial,
};
pub use theorems::{mathcal_c_star, mathcal_d, verify_lifting, verify_theorem1, verify_theorem2};

/// Identifier of a verified statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    Theorem1,
    Theorem2,
    Wolstenholme,
    /// `sum_{j<p} 1/j^2` modulo `p^2`
    HarmonicSquare,
    /// `sum_{j<p} 1/j^3` modulo `p`
    HarmonicCube,
    /// `sum_{j<=(p-1)/2} 1/j^2` modulo `p^2`
    HalfHarmonicSquare,
    /// `sum_{j<=(p-1)/2} 1/j^3` modulo `p`
    HalfHarmonicCube,
    /// `sum_{j<p} C(2j,j)/j^2` modulo `p`
    CentralBinomialSum,
    Cc8,
    Cc9,
    Cc13,
    Lifting,
    Conjecture,
}

impl Statement {
    pub fn id(&self) -> &'static str {
        match self {
            Self::Theorem1 => "theorem1",
            Self::Theorem2 => "theorem2",
            Self::Wolstenholme => "wolstenholme",
            Self::HarmonicSquare => "harmonic-square",
            Self::HarmonicCube => "harmonic-cube",
            Self::HalfHarmonicSquare => "harmonic-half-square",
            Self::HalfHarmonicCube => "harmonic-half-cube",
            Self::CentralBinomialSum => "harmonic-central-binomial",
            Self::Cc8 => "cc8",
            Self::Cc9 => "cc9",
            Self::Cc13 => "cc13",
            Self::Lifting => "lifting",
            Self::Conjecture => "conjecture",
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for Statement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

/// Grid coordinates of one report. Unused coordinates stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<SequenceFamily>,
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
}

impl Params {
    pub fn prime(p: u64) -> Self {
        Self {
            p,
            ..Self::default()
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(family) = &self.family {
            parts.push(format!("family={family}"));
        }
        parts.push(format!("p={}", self.p));
        let numeric = [
            ("n", self.n),
            ("k", self.k),
            ("j", self.j),
            ("r", self.r.map(u64::from)),
            ("s", self.s.map(u64::from)),
            ("m", self.m.map(u64::from)),
        ];
        for (name, value) in numeric {
            if let Some(v) = value {
                parts.push(format!("{name}={v}"));
            }
        }
        f.write_str(&parts.join(" "))
    }
}

/// Verdict for one congruence instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub statement: Statement,
    pub params: Params,
    pub modulus: Modulus,
    pub lhs: Residue,
    pub rhs: Residue,
    pub holds: bool,
    /// Largest `k <= 6` with the congruence holding modulo `p^k`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds_to_exponent: Option<u32>,
}

impl CongruenceReport {
    pub fn new(statement: Statement, params: Params, lhs: Residue, rhs: Residue) -> Result<Self> {
        if lhs.modulus() != rhs.modulus() {
            return Err(Error::ModulusMismatch {
                left: lhs.modulus().to_string(),
                right: rhs.modulus().to_string(),
            });
        }
        Ok(Self {
            statement,
            modulus: lhs.modulus().clone(),
            holds: lhs.value() == rhs.value(),
            params,
            lhs,
            rhs,
            holds_to_exponent: None,
        })
    }

    /// Ordering used for deterministic output: statement, p, n, k, j, then
    /// the remaining coordinates.
    #[allow(clippy::type_complexity)]
    pub fn sort_key(
        &self,
    ) -> (
        &'static str,
        u64,
        Option<u64>,
        Option<u64>,
        Option<u64>,
        Option<u32>,
        Option<u32>,
        Option<u32>,
        Option<SequenceFamily>,
    ) {
        let p = &self.params;
        (
            self.statement.id(),
            p.p,
            p.n,
            p.k,
            p.j,
            p.r,
            p.s,
            p.m,
            p.family,
        )
    }
}

impl fmt::Display for CongruenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} mod {}: lhs={} rhs={} {}",
            self.statement,
            self.params,
            self.modulus,
            self.lhs.value(),
            self.rhs.value(),
            if self.holds { "holds" } else { "FAILS" }
        )?;
        if let Some(k) = self.holds_to_exponent {
            write!(f, " (holds to p^{k})")?;
        }
        Ok(())
    }
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if p < 5 || !is_prime(p) {
        return Err(Error::UnsupportedParameters(format!(
            "{p} is not a prime >= 5"
        )));
    }
    Ok(())
}
