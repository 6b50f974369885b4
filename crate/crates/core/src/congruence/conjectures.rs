//! Recovery of the conjectured integer constants `𝒰_n`.
//!
//! For `B`, `F`: `u_{np} ≡ u_n + (1/2) p^2 (p/3) B_{p-2}(1/3) 𝒰_n`.
//! For `(δ)`, `(ζ)`: `u_{np} ≡ u_n + (1/3) p^3 B_{p-3} 𝒰_n`.
//!
//! Each prime yields `𝒰_n mod p`; the residues are glued with a symmetric
//! CRT.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::theorems::third_bernoulli_factor;
use super::{require_prime, CongruenceReport, Params, Statement};
use crate::arith::{
    crt_symmetric, ratio, rational_valuation, reduce_rational, Integer, Modulus, Rational, Residue,
};
use crate::bernoulli::bernoulli_number;
use crate::error::{Error, Result};
use crate::sequences::{term, SequenceFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Conjecture {
    /// Families `B` and `F`, `p^2` scale.
    First,
    /// Families `(δ)` and `(ζ)`, `p^3` scale.
    Second,
}

impl Conjecture {
    pub fn number(&self) -> u8 {
        match self {
            Self::First => 1,
            Self::Second => 2,
        }
    }

    /// Power of `p` in front of the correction term.
    pub fn scale_exponent(&self) -> u32 {
        match self {
            Self::First => 2,
            Self::Second => 3,
        }
    }

    /// Modulus exponent at which the congruence is checked.
    pub fn working_exponent(&self) -> u32 {
        self.scale_exponent() + 1
    }

    /// Rational factor `c_p` multiplying `p^e 𝒰_n`.
    pub fn factor(&self, p: u64) -> Result<Rational> {
        Ok(match self {
            Self::First => ratio(1, 2) * third_bernoulli_factor(p)?,
            Self::Second => ratio(1, 3) * bernoulli_number(p as usize - 3),
        })
    }
}

impl Serialize for Conjecture {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.number())
    }
}

pub fn conjecture_of(family: SequenceFamily) -> Option<Conjecture> {
    match family {
        SequenceFamily::ZagierB | SequenceFamily::AZF => Some(Conjecture::First),
        SequenceFamily::Delta | SequenceFamily::Zeta => Some(Conjecture::Second),
        _ => None,
    }
}

const TABLE_B: [i64; 8] = [3, 36, 243, 1008, 675, -32076, -355887, -2483136];
const TABLE_F: [i64; 8] = [10, 240, 3780, 49920, 598500, 6752160, 73076640, 767508480];
const TABLE_DELTA: [i64; 8] = [
    18, 432, 4698, 12672, -492750, -10524816, -118670454, -732312576,
];
const TABLE_ZETA: [i64; 8] = [
    -4,
    -288,
    -11124,
    -346368,
    -9625500,
    -249508512,
    -6170456124,
    -147509102592,
];

/// Published `𝒰_1, ..., 𝒰_8` for a conjecture family.
pub fn conjecture_table(family: SequenceFamily) -> Option<&'static [i64; 8]> {
    match family {
        SequenceFamily::ZagierB => Some(&TABLE_B),
        SequenceFamily::AZF => Some(&TABLE_F),
        SequenceFamily::Delta => Some(&TABLE_DELTA),
        SequenceFamily::Zeta => Some(&TABLE_ZETA),
        _ => None,
    }
}

/// Default bound on `|𝒰_n|` for the CRT sufficiency check: ten times the
/// largest tabulated magnitude.
pub const DEFAULT_MAGNITUDE_BOUND: i64 = 10 * 147_509_102_592;

/// Fewest primes a recovery may rest on.
pub const MIN_USABLE_PRIMES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipReason {
    /// `c_p ≡ 0 (mod p)`, so `𝒰_n mod p` is not determined.
    FactorVanishes,
    /// `p^e` does not divide `u_{np} - u_n`; the conjecture fails at `p`.
    DivisibilityFailure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedPrime {
    pub prime: u64,
    pub reason: SkipReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeResidue {
    pub prime: u64,
    #[serde(serialize_with = "as_decimal")]
    pub residue: Integer,
}

fn as_decimal<S: Serializer>(v: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn as_optional_decimal<S: Serializer>(
    v: &Option<Integer>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

/// Outcome of reconstructing one `𝒰_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecoveryReport {
    pub family: SequenceFamily,
    pub n: u64,
    pub conjecture: Conjecture,
    pub usable_primes: Vec<u64>,
    pub skipped_primes: Vec<SkippedPrime>,
    pub residues: Vec<PrimeResidue>,
    #[serde(serialize_with = "as_decimal")]
    pub crt_modulus: Integer,
    #[serde(serialize_with = "as_optional_decimal")]
    pub recovered: Option<Integer>,
    #[serde(serialize_with = "as_optional_decimal")]
    pub table_value: Option<Integer>,
    pub matches: Option<bool>,
}

impl RecoveryReport {
    pub fn divisibility_failures(&self) -> impl Iterator<Item = u64> + '_ {
        self.skipped_primes
            .iter()
            .filter(|s| s.reason == SkipReason::DivisibilityFailure)
            .map(|s| s.prime)
    }

    /// Replaces the expected value and recomputes `matches`.
    pub fn set_table_value(&mut self, value: Option<Integer>) {
        self.matches = match (&value, &self.recovered) {
            (Some(t), Some(r)) => Some(t == r),
            (Some(_), None) => Some(false),
            (None, _) => None,
        };
        self.table_value = value;
    }

    /// No divisibility failure, a recovered value, and no table mismatch.
    pub fn succeeded(&self) -> bool {
        self.divisibility_failures().next().is_none()
            && self.recovered.is_some()
            && self.matches != Some(false)
    }
}

fn table_entry(family: SequenceFamily, n: u64) -> Option<Integer> {
    let table = conjecture_table(family)?;
    let idx = usize::try_from(n).ok()?.checked_sub(1)?;
    table.get(idx).map(|&v| BigInt::from(v))
}

fn require_conjecture(family: SequenceFamily) -> Result<Conjecture> {
    conjecture_of(family).ok_or_else(|| {
        Error::UnsupportedParameters(format!("{family} has no conjectured constant"))
    })
}

/// Reconstructs `𝒰_n` for `family` from the residues at `primes`.
///
/// `magnitude_bound` is the largest `|𝒰_n|` the caller wants to be able to
/// distinguish; the usable primes must multiply to at least twice it.
pub fn recover_constant(
    family: SequenceFamily,
    n: u64,
    primes: &[u64],
    magnitude_bound: &Integer,
) -> Result<RecoveryReport> {
    let conjecture = require_conjecture(family)?;
    if n < 1 {
        return Err(Error::UnsupportedParameters("n must be >= 1".into()));
    }
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    for &p in &primes {
        require_prime(p)?;
    }

    let e = conjecture.scale_exponent();
    let u_n = term(family, n as usize);
    let mut usable_primes = Vec::new();
    let mut skipped_primes = Vec::new();
    let mut residues = Vec::new();
    let mut crt_inputs = Vec::new();

    for &p in &primes {
        let mod_p = Modulus::new(p, 1)?;
        let scale = num_traits::pow(BigInt::from(p), e as usize);
        let (quotient, rem) = (term(family, (n * p) as usize) - &u_n).div_rem(&scale);
        if !rem.is_zero() {
            skipped_primes.push(SkippedPrime {
                prime: p,
                reason: SkipReason::DivisibilityFailure,
            });
            continue;
        }
        let factor = reduce_rational(&conjecture.factor(p)?, &mod_p)?;
        if factor.value().is_zero() {
            skipped_primes.push(SkippedPrime {
                prime: p,
                reason: SkipReason::FactorVanishes,
            });
            continue;
        }
        let inv = crate::arith::mod_inverse(factor.value(), &mod_p)?;
        let residue = Residue::new(&quotient, &mod_p).mul(&inv)?;
        usable_primes.push(p);
        residues.push(PrimeResidue {
            prime: p,
            residue: residue.value().clone(),
        });
        crt_inputs.push(residue);
    }

    let crt_modulus: Integer = usable_primes.iter().map(|&p| BigInt::from(p)).product();
    let required = magnitude_bound * 2;
    let enough = usable_primes.len() >= MIN_USABLE_PRIMES && crt_modulus >= required;
    let has_failures = skipped_primes
        .iter()
        .any(|s| s.reason == SkipReason::DivisibilityFailure);
    if !enough && !has_failures {
        return Err(Error::InsufficientPrimes {
            product: crt_modulus.to_string(),
            required: format!("{required} from at least {MIN_USABLE_PRIMES} primes"),
        });
    }
    let recovered = if enough {
        Some(crt_symmetric(&crt_inputs)?)
    } else {
        None
    };

    let mut report = RecoveryReport {
        family,
        n,
        conjecture,
        usable_primes,
        skipped_primes,
        residues,
        crt_modulus,
        recovered,
        table_value: None,
        matches: None,
    };
    report.set_table_value(table_entry(family, n));
    Ok(report)
}

/// Checks the conjectured congruence at `p` with the tabulated `𝒰_n`.
pub fn verify_conjecture(family: SequenceFamily, n: u64, p: u64) -> Result<CongruenceReport> {
    let value = table_entry(family, n).ok_or_else(|| {
        Error::UnsupportedParameters(format!("no tabulated constant for {family} at n={n}"))
    })?;
    verify_conjecture_with(family, n, p, &value)
}

/// Largest exponent tracked by `holds_to_exponent`.
const MAX_TRACKED_EXPONENT: u32 = 6;

/// Checks `u_{np} ≡ u_n + c_p p^e 𝒰_n` with a caller-supplied `𝒰_n`.
///
/// The published statements print no modulus; this uses `p^3` for the
/// first conjecture and `p^4` for the second, and records the largest
/// `k <= 6` for which the congruence holds modulo `p^k`.
pub fn verify_conjecture_with(
    family: SequenceFamily,
    n: u64,
    p: u64,
    value: &Integer,
) -> Result<CongruenceReport> {
    let conjecture = require_conjecture(family)?;
    require_prime(p)?;
    if n < 1 {
        return Err(Error::UnsupportedParameters("n must be >= 1".into()));
    }
    let modulus = Modulus::new(p, conjecture.working_exponent())?;
    let lhs_value = term(family, (n * p) as usize);
    let scale = Rational::from_integer(num_traits::pow(
        BigInt::from(p),
        conjecture.scale_exponent() as usize,
    ));
    let rhs_value = Rational::from_integer(term(family, n as usize))
        + scale * conjecture.factor(p)? * Rational::from_integer(value.clone());

    let lhs = Residue::new(&lhs_value, &modulus);
    let rhs = reduce_rational(&rhs_value, &modulus)?;
    let depth = rational_valuation(&(Rational::from_integer(lhs_value) - rhs_value), p)
        .map_or(MAX_TRACKED_EXPONENT, |v| {
            v.clamp(0, MAX_TRACKED_EXPONENT as i64) as u32
        });

    let params = Params {
        family: Some(family),
        n: Some(n),
        ..Params::prime(p)
    };
    let mut report = CongruenceReport::new(Statement::Conjecture, params, lhs, rhs)?;
    report.holds_to_exponent = Some(depth);
    Ok(report)
}
