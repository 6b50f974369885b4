use num_bigint::BigInt;

use super::{require_prime, CongruenceReport, Params, Statement};
use crate::arith::{legendre, ratio, reduce_rational, Modulus, Rational, Residue};
use crate::bernoulli::{bernoulli_number, bernoulli_polynomial};
use crate::combinatorics::{binomial, central_binomial};
use crate::error::{Error, Result};
use crate::sequences::{term, SequenceFamily};

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn p_power(p: u64, e: u32) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(p), e as usize))
}

/// Correction coefficient of the generalized Domb congruence modulo `p^4`.
///
/// `(2, 1)` carries an extra sum over `k < n`; every other admissible pair
/// has `r + s >= 4` and uses the single weighted sum.
pub fn mathcal_d(n: u64, r: u32, s: u32) -> Result<Rational> {
    if r < 2 || s < 1 || n < 1 {
        return Err(Error::UnsupportedParameters(format!(
            "correction coefficient needs n >= 1, r >= 2, s >= 1 (got n={n}, r={r}, s={s})"
        )));
    }
    let n = n as i64;
    let (ri, si) = (r as i64, s as i64);
    let weighted: BigInt = (0..=n)
        .map(|k| {
            let m = n - k;
            let weight = ri * n * k * m + 2 * si * k.pow(3) + 2 * si * m.pow(3);
            num_traits::pow(binomial(n, k), r as usize)
                * num_traits::pow(central_binomial(k) * central_binomial(m), s as usize)
                * int(weight)
        })
        .sum();
    let mut total = -Rational::new(weighted, int(3));
    if (r, s) == (2, 1) {
        let extra: BigInt = (0..n)
            .map(|k| {
                let m = n - k;
                let b = binomial(n, k);
                &b * &b * central_binomial(k) * central_binomial(m - 1) * int(n * m * m)
            })
            .sum();
        total += Rational::from_integer(extra * 8);
    }
    Ok(total)
}

/// Correction coefficient of the `C*` congruence modulo `p^3`.
pub fn mathcal_c_star(n: u64) -> Rational {
    let n = n as i64;
    let sum: BigInt = (0..n)
        .map(|k| {
            let b = binomial(n, k);
            &b * &b * central_binomial(k) * int((n - k) * (n - k))
        })
        .sum();
    Rational::new(sum, int(2))
}

/// `D^(r,s)_{np} ≡ D^(r,s)_n + p^3 B_{p-3} 𝒟^(r,s)_n (mod p^4)`.
pub fn verify_theorem1(p: u64, n: u64, r: u32, s: u32) -> Result<CongruenceReport> {
    require_prime(p)?;
    let correction = mathcal_d(n, r, s)?;
    let family = SequenceFamily::DombGeneral { r, s };
    let modulus = Modulus::new(p, 4)?;

    let lhs = Residue::new(&term(family, (n * p) as usize), &modulus);
    let rhs_value = Rational::from_integer(term(family, n as usize))
        + p_power(p, 3) * bernoulli_number(p as usize - 3) * correction;
    let rhs = reduce_rational(&rhs_value, &modulus)?;

    let params = Params {
        n: Some(n),
        r: Some(r),
        s: Some(s),
        ..Params::prime(p)
    };
    CongruenceReport::new(Statement::Theorem1, params, lhs, rhs)
}

/// `(p/3) B_{p-2}(1/3)`, the factor shared by the `C*` congruence and the
/// first conjecture.
pub(crate) fn third_bernoulli_factor(p: u64) -> Result<Rational> {
    let symbol = legendre(&BigInt::from(p), 3)?;
    Ok(bernoulli_polynomial(p as usize - 2, &ratio(1, 3))
        * Rational::from_integer(int(symbol.into())))
}

/// `C*_{np} ≡ C*_n + p^2 (p/3) B_{p-2}(1/3) 𝒞*_n (mod p^3)`.
pub fn verify_theorem2(p: u64, n: u64) -> Result<CongruenceReport> {
    require_prime(p)?;
    if n < 1 {
        return Err(Error::UnsupportedParameters("n must be >= 1".into()));
    }
    let modulus = Modulus::new(p, 3)?;
    let lhs = Residue::new(&term(SequenceFamily::CStar, (n * p) as usize), &modulus);
    let rhs_value = Rational::from_integer(term(SequenceFamily::CStar, n as usize))
        + p_power(p, 2) * third_bernoulli_factor(p)? * mathcal_c_star(n);
    let rhs = reduce_rational(&rhs_value, &modulus)?;
    let params = Params {
        n: Some(n),
        ..Params::prime(p)
    };
    CongruenceReport::new(Statement::Theorem2, params, lhs, rhs)
}

/// Lifting congruences: `D_{np^m} ≡ D_{np^{m-1}} (mod p^{3m})` and
/// `C*_{np^m} ≡ C*_{np^{m-1}} (mod p^{2m})`.
pub fn verify_lifting(
    family: SequenceFamily,
    p: u64,
    m: u32,
    n: u64,
    index_cap: usize,
) -> Result<CongruenceReport> {
    require_prime(p)?;
    if m < 1 || n < 1 {
        return Err(Error::UnsupportedParameters("m and n must be >= 1".into()));
    }
    let per_level = match family {
        SequenceFamily::DOMB => 3,
        SequenceFamily::CStar => 2,
        other => {
            return Err(Error::UnsupportedParameters(format!(
                "no lifting congruence for {other}"
            )))
        }
    };
    let lower = n.saturating_mul(p.checked_pow(m - 1).unwrap_or(u64::MAX));
    let upper = lower.saturating_mul(p);
    if upper > index_cap as u64 {
        return Err(Error::IndexCapExceeded {
            index: usize::try_from(upper).unwrap_or(usize::MAX),
            cap: index_cap,
        });
    }
    let modulus = Modulus::new(p, per_level * m)?;
    let lhs = Residue::new(&term(family, upper as usize), &modulus);
    let rhs = Residue::new(&term(family, lower as usize), &modulus);
    let params = Params {
        family: Some(family),
        n: Some(n),
        m: Some(m),
        ..Params::prime(p)
    };
    CongruenceReport::new(Statement::Lifting, params, lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_in;
    use num_traits::Zero;

    // Direct transcription of both correction sums with i128 binomials,
    // independent of the cached BigInt path.
    fn small_binomial(n: i64, k: i64) -> i128 {
        if k < 0 || k > n {
            return 0;
        }
        (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
    }

    fn oracle_d(n: i64, r: u32, s: u32) -> (i128, i128) {
        // returns numerator over 3
        let mut over_three = 0i128;
        for k in 0..=n {
            let m = n - k;
            let w = r as i128 * (n * k * m) as i128 + 2 * s as i128 * (k.pow(3) + m.pow(3)) as i128;
            over_three -= small_binomial(n, k).pow(r)
                * (small_binomial(2 * k, k) * small_binomial(2 * m, m)).pow(s)
                * w;
        }
        if (r, s) == (2, 1) {
            for k in 0..n {
                let m = n - k;
                over_three += 3
                    * 8
                    * small_binomial(n, k).pow(2)
                    * small_binomial(2 * k, k)
                    * small_binomial(2 * m - 2, m - 1)
                    * (n * m * m) as i128;
            }
        }
        (over_three, 3)
    }

    #[test]
    fn correction_examples() {
        assert_eq!(oracle_d(1, 2, 1), (16, 3));
        assert_eq!(mathcal_d(1, 2, 1).unwrap(), ratio(16, 3));
        assert_eq!(oracle_d(1, 3, 1), (-8, 3));
        assert_eq!(mathcal_d(1, 3, 1).unwrap(), ratio(-8, 3));
        assert!(mathcal_d(1, 1, 1).is_err());
        assert!(mathcal_d(0, 2, 1).is_err());
    }

    #[test]
    fn correction_matches_oracle() {
        for (r, s) in [(2, 1), (2, 2), (3, 1), (4, 1), (3, 2)] {
            for n in 1..=6 {
                let (num, den) = oracle_d(n, r, s);
                let expected = Rational::new(BigInt::from(num), BigInt::from(den));
                assert_eq!(
                    mathcal_d(n as u64, r, s).unwrap(),
                    expected,
                    "n={n} r={r} s={s}"
                );
            }
        }
    }

    #[test]
    fn c_star_correction_examples() {
        assert_eq!(mathcal_c_star(1), ratio(1, 2));
        assert_eq!(mathcal_c_star(2), ratio(6, 1));
        assert_eq!(mathcal_c_star(3), ratio(135, 2));
    }

    #[test]
    fn theorem1_examples() {
        assert!(verify_theorem1(5, 1, 2, 1).unwrap().holds);
        assert!(verify_theorem1(7, 2, 3, 1).unwrap().holds);
        assert!(verify_theorem1(5, 1, 2, 2).unwrap().holds);
        assert!(verify_theorem1(5, 1, 1, 1).is_err());
        assert!(verify_theorem1(3, 1, 2, 1).is_err());
    }

    #[test]
    fn theorem1_fails_without_correction() {
        // D_5 - D_1 is not divisible by 5^4, so dropping the Bernoulli
        // term must break the congruence.
        let diff = term(SequenceFamily::DOMB, 5) - term(SequenceFamily::DOMB, 1);
        assert!(!(diff % 625u32).is_zero());
    }

    #[test]
    fn theorem2_examples() {
        // (C*_5 - C*_1) / 25 = 186
        assert_eq!(term(SequenceFamily::CStar, 5), BigInt::from(4653));
        let m5 = Modulus::new(5, 1).unwrap();
        let factor = third_bernoulli_factor(5).unwrap() * ratio(1, 2);
        assert_eq!(factor, ratio(-1, 54));
        assert_eq!(
            reduce_rational(&factor, &m5).unwrap().value(),
            &BigInt::from(1)
        );
        assert!(verify_theorem2(5, 1).unwrap().holds);
        assert!(verify_theorem2(7, 1).unwrap().holds);
        assert!(verify_theorem2(5, 2).unwrap().holds);
    }

    #[test]
    fn theorem_reports_share_moduli() {
        for p in primes_in(5, 13) {
            let r = verify_theorem1(p, 2, 2, 1).unwrap();
            assert_eq!(r.lhs.modulus(), r.rhs.modulus());
            assert_eq!(r.modulus.exponent(), 4);
            assert_eq!(r.holds, r.lhs.value() == r.rhs.value());
        }
    }

    #[test]
    fn lifting_examples() {
        assert!(
            verify_lifting(SequenceFamily::DOMB, 5, 1, 1, 2000)
                .unwrap()
                .holds
        );
        assert!(
            verify_lifting(SequenceFamily::CStar, 5, 2, 1, 2000)
                .unwrap()
                .holds
        );
        assert!(
            verify_lifting(SequenceFamily::DOMB, 7, 1, 2, 2000)
                .unwrap()
                .holds
        );
        assert_eq!(
            verify_lifting(SequenceFamily::DOMB, 7, 2, 1, 40),
            Err(Error::IndexCapExceeded { index: 49, cap: 40 })
        );
        assert!(verify_lifting(SequenceFamily::Zeta, 5, 1, 1, 2000).is_err());
    }
}
