use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::theorems::third_bernoulli_factor;
use super::{require_prime, CongruenceReport, Params, Statement};
use crate::arith::{congruent_rationals, ratio, reduce_rational, Modulus, Rational, Residue};
use crate::bernoulli::bernoulli_number;
use crate::combinatorics::{binomial, central_binomial, harmonic_power_sum};
use crate::error::{Error, Result};

fn rat(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

fn rat_i(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn check_j(p: u64, j: u64) -> Result<()> {
    if j < 1 || j > p - 1 {
        return Err(Error::UnsupportedParameters(format!(
            "j must lie in 1..={} (got {j})",
            p - 1
        )));
    }
    Ok(())
}

/// `C(np, kp) ≡ C(n, k) (1 - nk(n-k) p^3 B_{p-3} / 3) (mod p^4)`.
pub fn verify_wolstenholme_binomial(p: u64, n: u64, k: u64) -> Result<CongruenceReport> {
    require_prime(p)?;
    if k > n {
        return Err(Error::UnsupportedParameters(format!(
            "need n >= k (got n={n}, k={k})"
        )));
    }
    let modulus = Modulus::new(p, 4)?;
    let (pi, ni, ki) = (p as i64, n as i64, k as i64);
    let lhs = Residue::new(&binomial(ni * pi, ki * pi), &modulus);
    let correction = ratio(ni * ki * (ni - ki), 3)
        * rat(num_traits::pow(BigInt::from(p), 3))
        * bernoulli_number(p as usize - 3);
    let rhs_value = rat(binomial(ni, ki)) * (Rational::one() - correction);
    let rhs = reduce_rational(&rhs_value, &modulus)?;
    let params = Params {
        n: Some(n),
        k: Some(k),
        ..Params::prime(p)
    };
    CongruenceReport::new(Statement::Wolstenholme, params, lhs, rhs)
}

/// Harmonic-type congruences at `p`, five reports:
///
/// * `sum_{j<p} 1/j^2 ≡ (2/3) p B_{p-3} (mod p^2)`
/// * `sum_{j<p} 1/j^3 ≡ 0 (mod p)`
/// * `sum_{j<=(p-1)/2} 1/j^2 ≡ (7/3) p B_{p-3} (mod p^2)`
/// * `sum_{j<=(p-1)/2} 1/j^3 ≡ -2 B_{p-3} (mod p)`
/// * `sum_{j<p} C(2j,j)/j^2 ≡ (1/2) (p/3) B_{p-2}(1/3) (mod p)`
pub fn verify_harmonic(p: u64) -> Result<Vec<CongruenceReport>> {
    require_prime(p)?;
    let mod_p = Modulus::new(p, 1)?;
    let mod_p2 = Modulus::new(p, 2)?;
    let b = bernoulli_number(p as usize - 3);
    let p_rat = rat_i(p as i64);
    let half = (p - 1) / 2;

    let central: Rational = (1..p)
        .map(|j| {
            let j = j as i64;
            Rational::new(central_binomial(j), BigInt::from(j * j))
        })
        .fold(Rational::zero(), |a, x| a + x);

    let cases = [
        (
            Statement::HarmonicSquare,
            harmonic_power_sum(p - 1, 2),
            ratio(2, 3) * &p_rat * &b,
            &mod_p2,
        ),
        (
            Statement::HarmonicCube,
            harmonic_power_sum(p - 1, 3),
            Rational::zero(),
            &mod_p,
        ),
        (
            Statement::HalfHarmonicSquare,
            harmonic_power_sum(half, 2),
            ratio(7, 3) * &p_rat * &b,
            &mod_p2,
        ),
        (
            Statement::HalfHarmonicCube,
            harmonic_power_sum(half, 3),
            rat_i(-2) * &b,
            &mod_p,
        ),
        (
            Statement::CentralBinomialSum,
            central,
            ratio(1, 2) * third_bernoulli_factor(p)?,
            &mod_p,
        ),
    ];

    cases
        .into_iter()
        .map(|(statement, lhs, rhs, modulus)| {
            CongruenceReport::new(
                statement,
                Params::prime(p),
                reduce_rational(&lhs, modulus)?,
                reduce_rational(&rhs, modulus)?,
            )
        })
        .collect()
}

/// Central-binomial product modulo `p^2` for `n > k`, `1 <= j <= p-1`:
///
/// `C(2kp+2j, kp+j) C(2np-2kp-2j, np-kp-j) ≡ (2p/j) C(2k,k) C(2n-2k-2, n-k-1) f`
/// with `f = 2k+1-2n` for `j <= (p-1)/2` and `f = 2k+1` otherwise.
pub fn verify_cc8(p: u64, n: u64, k: u64, j: u64) -> Result<CongruenceReport> {
    require_prime(p)?;
    check_j(p, j)?;
    if k >= n {
        return Err(Error::UnsupportedParameters(format!(
            "need n > k (got n={n}, k={k})"
        )));
    }
    let modulus = Modulus::new(p, 2)?;
    let (p, n, k, j) = (p as i64, n as i64, k as i64, j as i64);

    let lhs_value = binomial(2 * k * p + 2 * j, k * p + j)
        * binomial(2 * n * p - 2 * k * p - 2 * j, n * p - k * p - j);
    let lhs = Residue::new(&lhs_value, &modulus);

    let factor = if j <= (p - 1) / 2 {
        2 * k + 1 - 2 * n
    } else {
        2 * k + 1
    };
    let rhs_value =
        ratio(2 * p, j) * rat(central_binomial(k) * central_binomial(n - k - 1)) * rat_i(factor);
    let rhs = reduce_rational(&rhs_value, &modulus)?;

    let params = Params {
        n: Some(n as u64),
        k: Some(k as u64),
        j: Some(j as u64),
        ..Params::prime(p as u64)
    };
    CongruenceReport::new(Statement::Cc8, params, lhs, rhs)
}

/// `C(2kp+2j, kp+j) ≡ C(2k,k) C(2j,j) (1 + 2kp (H_{2j} - H_j)) (mod p^2)`.
pub fn verify_cc9(p: u64, k: u64, j: u64) -> Result<CongruenceReport> {
    require_prime(p)?;
    check_j(p, j)?;
    let modulus = Modulus::new(p, 2)?;
    let (pi, ki, ji) = (p as i64, k as i64, j as i64);

    let lhs = Residue::new(&binomial(2 * ki * pi + 2 * ji, ki * pi + ji), &modulus);
    // H_{2j} has a 1/p term once 2j >= p; the factor p cancels it.
    let harmonic_gap = harmonic_power_sum(2 * j, 1) - harmonic_power_sum(j, 1);
    let rhs_value = rat(central_binomial(ki) * central_binomial(ji))
        * (Rational::one() + rat_i(2 * ki * pi) * harmonic_gap);
    let rhs = reduce_rational(&rhs_value, &modulus)?;

    let params = Params {
        k: Some(k),
        j: Some(j),
        ..Params::prime(p)
    };
    CongruenceReport::new(Statement::Cc9, params, lhs, rhs)
}

/// `C(p,j)^2 / C(2p,2j) ≡ ∓p/j (mod p^2)`, minus for `j <= (p-1)/2`.
///
/// The left side is a rational with a factor `p` in the denominator of the
/// unreduced quotient, so the verdict uses the valuation of the difference.
/// In lowest terms the quotient is `p`-integral, which lets both sides be
/// shown as residues as well.
pub fn verify_cc13_cc14(p: u64, j: u64) -> Result<CongruenceReport> {
    require_prime(p)?;
    check_j(p, j)?;
    let modulus = Modulus::new(p, 2)?;
    let (pi, ji) = (p as i64, j as i64);

    let c = binomial(pi, ji);
    let lhs_value = Rational::new(&c * &c, binomial(2 * pi, 2 * ji));
    let sign = if j <= (p - 1) / 2 { -1 } else { 1 };
    let rhs_value = ratio(sign * pi, ji);

    let holds = congruent_rationals(&lhs_value, &rhs_value, p, 2);
    let lhs = reduce_rational(&lhs_value, &modulus)?;
    let rhs = reduce_rational(&rhs_value, &modulus)?;
    let params = Params {
        j: Some(j),
        ..Params::prime(p)
    };
    let report = CongruenceReport::new(Statement::Cc13, params, lhs, rhs)?;
    debug_assert_eq!(report.holds, holds);
    Ok(CongruenceReport { holds, ..report })
}
