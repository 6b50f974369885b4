//! Term generators for the eight Apéry-like families, three-term recurrence
//! evaluation and exact recurrence fitting.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use parking_lot::RwLock;
use serde::{Serialize, Serializer};

use crate::arith::{Integer, Rational};
use crate::combinatorics::{binomial, central_binomial};
use crate::error::{Error, Result};

/// Identifies one sequence family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceFamily {
    /// `a_n = sum C(n,k)^2 C(n+k,k)^2`
    AperyA,
    /// `b_n = sum C(n,k)^2 C(n+k,k)`
    AperyB,
    /// `C*_n = sum C(n,k)^2 C(2k,k)`
    CStar,
    /// `D_n^(r,s) = sum C(n,k)^r (C(2k,k) C(2n-2k,n-k))^s`; `(2, 1)` is Domb.
    DombGeneral { r: u32, s: u32 },
    /// `sum (-1)^k 3^(n-3k) C(n,3k) C(3k,2k) C(2k,k)`
    ZagierB,
    /// `sum (-1)^k 8^(n-k) C(n,k) sum_j C(k,j)^3`
    AZF,
    /// `sum (-1)^k 3^(n-3k) C(n,3k) C(n+k,k) C(3k,2k) C(2k,k)`
    Delta,
    /// `sum_k sum_l C(n,k)^2 C(n,l) C(k,l) C(k+l,n)`
    Zeta,
}

impl SequenceFamily {
    pub const DOMB: SequenceFamily = SequenceFamily::DombGeneral { r: 2, s: 1 };

    /// Stable command-line / file name of the family.
    pub fn name(&self) -> &'static str {
        match self {
            Self::AperyA => "apery-a",
            Self::AperyB => "apery-b",
            Self::CStar => "c-star",
            Self::DombGeneral { r: 2, s: 1 } => "domb",
            Self::DombGeneral { .. } => "d-general",
            Self::ZagierB => "zagier-b",
            Self::AZF => "az-f",
            Self::Delta => "delta",
            Self::Zeta => "zeta",
        }
    }

    /// Parameter tag, `-` when the family has none. Never contains a comma.
    pub fn params(&self) -> String {
        match self {
            Self::DombGeneral { r, s } => format!("r{r}s{s}"),
            _ => "-".to_string(),
        }
    }

    /// Parses a family name, attaching `(r, s)` for `d-general`.
    pub fn parse_with(name: &str, r: u32, s: u32) -> Result<Self> {
        match name {
            "d-general" => {
                if r == 0 || s == 0 {
                    return Err(Error::UnsupportedParameters(format!(
                        "d-general needs r, s >= 1 (got r={r}, s={s})"
                    )));
                }
                Ok(Self::DombGeneral { r, s })
            }
            other => other.parse(),
        }
    }

    pub fn all_fixed() -> [SequenceFamily; 8] {
        [
            Self::AperyA,
            Self::AperyB,
            Self::CStar,
            Self::DOMB,
            Self::ZagierB,
            Self::AZF,
            Self::Delta,
            Self::Zeta,
        ]
    }
}

impl fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DombGeneral { r, s } if (*r, *s) != (2, 1) => {
                write!(f, "d-general(r={r},s={s})")
            }
            _ => f.write_str(self.name()),
        }
    }
}

impl FromStr for SequenceFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "apery-a" => Self::AperyA,
            "apery-b" => Self::AperyB,
            "c-star" => Self::CStar,
            "domb" => Self::DOMB,
            "zagier-b" => Self::ZagierB,
            "az-f" => Self::AZF,
            "delta" => Self::Delta,
            "zeta" => Self::Zeta,
            "d-general" => {
                return Err(Error::UnsupportedParameters(
                    "d-general needs explicit r and s".into(),
                ))
            }
            other => {
                return Err(Error::UnsupportedParameters(format!(
                    "unknown family `{other}`"
                )))
            }
        })
    }
}

impl Serialize for SequenceFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn c(n: i64, k: i64) -> Integer {
    binomial(n, k)
}

fn sign(k: i64) -> Integer {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn pow(base: u64, exp: i64) -> Integer {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// Evaluates the defining sum of `family` at `n`.
pub fn term_by_sum(family: SequenceFamily, n: usize) -> Integer {
    let n = n as i64;
    match family {
        SequenceFamily::AperyA => (0..=n)
            .map(|k| {
                let t = c(n, k) * c(n + k, k);
                &t * &t
            })
            .sum(),
        SequenceFamily::AperyB => (0..=n)
            .map(|k| {
                let b = c(n, k);
                &b * &b * c(n + k, k)
            })
            .sum(),
        SequenceFamily::CStar => (0..=n)
            .map(|k| {
                let b = c(n, k);
                &b * &b * central_binomial(k)
            })
            .sum(),
        SequenceFamily::DombGeneral { r, s } => (0..=n)
            .map(|k| {
                let outer = num_traits::pow(c(n, k), r as usize);
                let inner = central_binomial(k) * central_binomial(n - k);
                outer * num_traits::pow(inner, s as usize)
            })
            .sum(),
        SequenceFamily::ZagierB => (0..=n / 3)
            .map(|k| {
                sign(k) * pow(3, n - 3 * k) * c(n, 3 * k) * c(3 * k, 2 * k) * central_binomial(k)
            })
            .sum(),
        SequenceFamily::AZF => {
            let mut franel = BigInt::zero();
            let mut total = BigInt::zero();
            for k in 0..=n {
                franel.set_zero();
                for j in 0..=k {
                    let b = c(k, j);
                    franel += &b * &b * &b;
                }
                total += sign(k) * pow(8, n - k) * c(n, k) * &franel;
            }
            total
        }
        SequenceFamily::Delta => (0..=n / 3)
            .map(|k| {
                sign(k)
                    * pow(3, n - 3 * k)
                    * c(n, 3 * k)
                    * c(n + k, k)
                    * c(3 * k, 2 * k)
                    * central_binomial(k)
            })
            .sum(),
        SequenceFamily::Zeta => {
            let mut total = BigInt::zero();
            for k in 0..=n {
                let outer = c(n, k);
                let outer = &outer * &outer;
                // C(k, l) needs l <= k and C(k + l, n) needs k + l >= n
                for l in (n - k).max(0)..=k {
                    total += &outer * c(n, l) * c(k, l) * c(k + l, n);
                }
            }
            total
        }
    }
}

/// Memoized terms keyed by family and index.
#[derive(Debug, Default)]
pub struct TermCache {
    terms: RwLock<HashMap<(SequenceFamily, usize), Integer>>,
}

impl TermCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static TermCache {
        static CACHE: OnceLock<TermCache> = OnceLock::new();
        CACHE.get_or_init(TermCache::new)
    }

    pub fn get(&self, family: SequenceFamily, n: usize) -> Integer {
        if let Some(t) = self.terms.read().get(&(family, n)) {
            return t.clone();
        }
        // Evaluated outside the lock; racing writers store identical values.
        let value = term_by_sum(family, n);
        self.terms.write().insert((family, n), value.clone());
        value
    }

    /// Seeds `u_0, ..., u_{len-1}` for `family`, e.g. from an on-disk cache.
    pub fn preload(&self, family: SequenceFamily, terms: &[Integer]) {
        let mut map = self.terms.write();
        for (n, t) in terms.iter().enumerate() {
            map.insert((family, n), t.clone());
        }
    }

    /// `u_0, ..., u_{len-1}`, computing whatever is missing.
    pub fn prefix(&self, family: SequenceFamily, len: usize) -> Vec<Integer> {
        (0..len).map(|n| self.get(family, n)).collect()
    }

    pub fn len(&self) -> usize {
        self.terms.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `u_n` of `family` from the shared cache.
pub fn term(family: SequenceFamily, n: usize) -> Integer {
    TermCache::global().get(family, n)
}

/// Shape of a three-term recurrence with `u_{-1} = 0`, `u_0 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    /// `(n+1)^2 u_{n+1} - (A n^2 + A n + λ) u_n + B n^2 u_{n-1} = 0`
    Zagier2,
    /// `(n+1)^3 u_{n+1} - (2n+1)(a n^2 + a n + b) u_n + c n^3 u_{n-1} = 0`
    AZ3,
}

/// A recurrence with concrete integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum RecurrenceShape {
    Zagier2 { a: i64, b: i64, lambda: i64 },
    AZ3 { a: i64, b: i64, c: i64 },
}

impl RecurrenceShape {
    pub const APERY_A: RecurrenceShape = RecurrenceShape::AZ3 { a: 17, b: 5, c: 1 };
    pub const APERY_B: RecurrenceShape = RecurrenceShape::Zagier2 {
        a: 11,
        b: -1,
        lambda: 3,
    };

    pub fn kind(&self) -> ShapeKind {
        match self {
            Self::Zagier2 { .. } => ShapeKind::Zagier2,
            Self::AZ3 { .. } => ShapeKind::AZ3,
        }
    }

    pub fn coefficients(&self) -> [i64; 3] {
        match *self {
            Self::Zagier2 { a, b, lambda } => [a, b, lambda],
            Self::AZ3 { a, b, c } => [a, b, c],
        }
    }

    fn from_coefficients(kind: ShapeKind, [x, y, z]: [i64; 3]) -> Self {
        match kind {
            ShapeKind::Zagier2 => Self::Zagier2 {
                a: x,
                b: y,
                lambda: z,
            },
            ShapeKind::AZ3 => Self::AZ3 { a: x, b: y, c: z },
        }
    }

    /// Returns `(lead, mid, back)` with
    /// `lead · u_{n+1} = mid · u_n - back · u_{n-1}`.
    fn step_coefficients(&self, n: i64) -> (i64, i64, i64) {
        match *self {
            Self::Zagier2 { a, b, lambda } => {
                ((n + 1) * (n + 1), a * n * n + a * n + lambda, b * n * n)
            }
            Self::AZ3 { a, b, c } => (
                (n + 1).pow(3),
                (2 * n + 1) * (a * n * n + a * n + b),
                c * n.pow(3),
            ),
        }
    }

    /// `u_0, ..., u_n` from the recurrence.
    pub fn terms(&self, n: usize) -> Result<Vec<Integer>> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(BigInt::one());
        let mut prev = BigInt::zero();
        for i in 0..n {
            let (lead, mid, back) = self.step_coefficients(i as i64);
            let cur = out.last().expect("non-empty");
            let rhs = BigInt::from(mid) * cur - BigInt::from(back) * &prev;
            let (q, r) = rhs.div_rem(&BigInt::from(lead));
            if !r.is_zero() {
                return Err(Error::NonIntegerStep { n: i + 1 });
            }
            prev = cur.clone();
            out.push(q);
        }
        Ok(out)
    }
}

/// `u_n` computed from the recurrence.
pub fn term_by_recurrence(shape: &RecurrenceShape, n: usize) -> Result<Integer> {
    Ok(shape.terms(n)?.pop().expect("non-empty"))
}

/// Terms through which a fitted recurrence is checked.
pub const FIT_VALIDATION_LIMIT: usize = 100;

/// Recovers integer coefficients of `kind` from `u_0..u_3` of `family`, then
/// validates them against the defining sums for `n <= 100`.
pub fn fit_recurrence(family: SequenceFamily, kind: ShapeKind) -> Result<RecurrenceShape> {
    let fail = |reason: String| Error::NoIntegerFit {
        family: family.to_string(),
        reason,
    };
    let u: Vec<Rational> = (0..4)
        .map(|n| Rational::from_integer(term(family, n)))
        .collect();
    let zero = Rational::zero();

    // One linear equation in the three unknowns per n = 0, 1, 2.
    let mut rows: Vec<[Rational; 4]> = (0..3usize)
        .map(|i| {
            let n = Rational::from_integer(BigInt::from(i));
            let one = Rational::one();
            let prev = if i == 0 {
                zero.clone()
            } else {
                u[i - 1].clone()
            };
            let (cur, next) = (&u[i], &u[i + 1]);
            let nn = &n * &n + &n;
            match kind {
                ShapeKind::Zagier2 => [
                    &nn * cur,
                    -(&n * &n) * &prev,
                    cur.clone(),
                    (&n + &one) * (&n + &one) * next,
                ],
                ShapeKind::AZ3 => {
                    let odd = &n * Rational::from_integer(2.into()) + &one;
                    let np1 = &n + &one;
                    [
                        &odd * &nn * cur,
                        &odd * cur,
                        -(&n * &n * &n) * &prev,
                        &np1 * &np1 * &np1 * next,
                    ]
                }
            }
        })
        .collect();

    let solution = solve3(&mut rows).ok_or_else(|| fail("singular system".into()))?;
    let mut coeffs = [0i64; 3];
    for (slot, value) in coeffs.iter_mut().zip(&solution) {
        if !value.is_integer() {
            return Err(fail(format!("non-integer coefficient {value}")));
        }
        *slot = value
            .to_integer()
            .to_i64()
            .ok_or_else(|| fail(format!("coefficient {value} out of range")))?;
    }
    let shape = RecurrenceShape::from_coefficients(kind, coeffs);

    let by_recurrence = shape
        .terms(FIT_VALIDATION_LIMIT)
        .map_err(|e| fail(e.to_string()))?;
    for (n, value) in by_recurrence.iter().enumerate() {
        if *value != term(family, n) {
            return Err(fail(format!("disagrees with the defining sum at n = {n}")));
        }
    }
    Ok(shape)
}

/// Gauss-Jordan on an augmented 3x4 system; `None` when singular.
fn solve3(rows: &mut [[Rational; 4]]) -> Option<[Rational; 3]> {
    for col in 0..3 {
        let pivot = (col..3).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let lead = rows[col][col].clone();
        for v in rows[col].iter_mut() {
            *v = &*v / &lead;
        }
        for r in 0..3 {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                let pivot_row = rows[col].clone();
                for (v, p) in rows[r].iter_mut().zip(pivot_row.iter()) {
                    *v = &*v - &factor * p;
                }
            }
        }
    }
    Some([rows[0][3].clone(), rows[1][3].clone(), rows[2][3].clone()])
}

/// True when every term is a positive even integer, e.g. Domb for `n >= 1`.
pub fn positive_and_even(terms: &[Integer]) -> bool {
    terms.iter().all(|t| t.is_positive() && t.is_even())
}
