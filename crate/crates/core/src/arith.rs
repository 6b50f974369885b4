//! Exact integers and rationals, prime-power residue rings, the Legendre
//! symbol and signed Chinese-remainder reconstruction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Normalized arbitrary-precision fraction with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A prime power `prime^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    prime: u64,
    exponent: u32,
    value: Integer,
}

impl Modulus {
    pub fn new(prime: u64, exponent: u32) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::InvalidModulus(format!("{prime} is not prime")));
        }
        if exponent == 0 {
            return Err(Error::InvalidModulus("exponent must be at least 1".into()));
        }
        Ok(Self {
            prime,
            exponent,
            value: num_traits::pow(BigInt::from(prime), exponent as usize),
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn value(&self) -> &Integer {
        &self.value
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.prime, self.exponent)
    }
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Modulus", 3)?;
        s.serialize_field("prime", &self.prime.to_string())?;
        s.serialize_field("exponent", &self.exponent)?;
        s.serialize_field("value", &self.value.to_string())?;
        s.end()
    }
}

/// Canonical representative in `[0, modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    value: Integer,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: &Integer, modulus: &Modulus) -> Self {
        Self {
            value: value.mod_floor(modulus.value()),
            modulus: modulus.clone(),
        }
    }

    pub fn from_i64(value: i64, modulus: &Modulus) -> Self {
        Self::new(&BigInt::from(value), modulus)
    }

    pub fn zero(modulus: &Modulus) -> Self {
        Self::from_i64(0, modulus)
    }

    pub fn value(&self) -> &Integer {
        &self.value
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    fn check(&self, other: &Residue) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.to_string(),
                right: other.modulus.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Ok(Residue::new(&(&self.value + &other.value), &self.modulus))
    }

    pub fn sub(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Ok(Residue::new(&(&self.value - &other.value), &self.modulus))
    }

    pub fn mul(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Ok(Residue::new(&(&self.value * &other.value), &self.modulus))
    }

    pub fn neg(&self) -> Residue {
        Residue::new(&-&self.value, &self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Serialize for Residue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.value.to_string())
    }
}

/// Inverse of `a` modulo `m.value()`.
pub fn mod_inverse(a: &Integer, m: &Modulus) -> Result<Residue> {
    let a = a.mod_floor(m.value());
    let egcd = a.extended_gcd(m.value());
    if !egcd.gcd.is_one() {
        return Err(Error::NotInvertible {
            value: a.to_string(),
            modulus: m.to_string(),
        });
    }
    Ok(Residue::new(&egcd.x, m))
}

/// Image of a `prime`-integral rational in `Z / m`.
pub fn reduce_rational(q: &Rational, m: &Modulus) -> Result<Residue> {
    let den = q.denom();
    if (den % m.prime()).is_zero() {
        return Err(Error::DenominatorNotCoprime {
            denominator: den.to_string(),
            prime: m.prime(),
        });
    }
    let inv = mod_inverse(den, m)?;
    Ok(Residue::new(&(q.numer() * inv.value()), m))
}

/// Legendre symbol `(a / p)` by Euler's criterion.
pub fn legendre(a: &Integer, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidModulus(format!("{p} is not an odd prime")));
    }
    let p_big = BigInt::from(p);
    let a = a.mod_floor(&p_big);
    if a.is_zero() {
        return Ok(0);
    }
    let e = a.modpow(&BigInt::from((p - 1) / 2), &p_big);
    Ok(if e.is_one() { 1 } else { -1 })
}

/// Unique `x` in `[-M/2, M/2)` congruent to every residue, `M` the product
/// of the moduli.
pub fn crt_symmetric(residues: &[Residue]) -> Result<Integer> {
    let (first, rest) = residues.split_first().ok_or(Error::EmptyResidues)?;
    let mut x = first.value().clone();
    let mut modulus = first.modulus().value().clone();
    for r in rest {
        let m = r.modulus().value();
        let egcd = modulus.extended_gcd(m);
        if !egcd.gcd.is_one() {
            return Err(Error::NonCoprimeModuli);
        }
        // x + modulus * t ≡ r (mod m)
        let t = ((r.value() - &x) * &egcd.x).mod_floor(m);
        x += &modulus * t;
        modulus *= m;
        x = x.mod_floor(&modulus);
    }
    if &x * 2 >= modulus {
        x -= &modulus;
    }
    Ok(x)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in the inclusive range `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Exponent of `p` in a nonzero integer; `None` for zero.
pub fn valuation(x: &Integer, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// Exponent of `p` in a nonzero rational; `None` for zero.
pub fn rational_valuation(q: &Rational, p: u64) -> Option<i64> {
    let num = valuation(q.numer(), p)?;
    let den = valuation(q.denom(), p).unwrap_or(0);
    Some(num as i64 - den as i64)
}

/// `x ≡ y (mod p^k)` for rationals: the difference has valuation at least `k`.
pub fn congruent_rationals(x: &Rational, y: &Rational, p: u64, k: u32) -> bool {
    match rational_valuation(&(x - y), p) {
        None => true,
        Some(v) => v >= k as i64,
    }
}
