//! Bernoulli numbers and polynomials.
//!
//! Convention: the numbers come from `z / (e^z - 1)`, so `B_1 = -1/2`.
//! The other common convention (`B_1 = +1/2`, from `z / (1 - e^{-z})`)
//! changes every odd-index term of `B_n(x) = sum_k C(n,k) B_k x^{n-k}`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use parking_lot::RwLock;

use crate::arith::{reduce_rational, Modulus, Rational, Residue};
use crate::combinatorics::binomial;
use crate::error::Result;

/// Append-only table `B_0, ..., B_N`.
#[derive(Debug, Default)]
pub struct BernoulliTable {
    values: RwLock<Vec<Rational>>,
}

impl BernoulliTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(BernoulliTable::new)
    }

    pub fn get(&self, n: usize) -> Rational {
        if let Some(b) = self.values.read().get(n) {
            return b.clone();
        }
        let mut values = self.values.write();
        if values.is_empty() {
            values.push(Rational::one());
        }
        // (m + 1) B_m = -sum_{j<m} C(m+1, j) B_j
        while values.len() <= n {
            let m = values.len();
            let value = if m > 1 && m % 2 == 1 {
                Rational::zero()
            } else {
                let sum = values
                    .iter()
                    .enumerate()
                    .filter(|(j, b)| *j < 2 || !b.is_zero())
                    .fold(Rational::zero(), |acc, (j, b)| {
                        acc + b * Rational::from_integer(binomial(m as i64 + 1, j as i64))
                    });
                -sum / Rational::from_integer(BigInt::from(m + 1))
            };
            values.push(value);
        }
        values[n].clone()
    }

    pub fn len(&self) -> usize {
        self.values.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Exact `B_n`.
pub fn bernoulli_number(n: usize) -> Rational {
    BernoulliTable::global().get(n)
}

/// Exact `B_n(x) = sum_{k=0}^{n} C(n, k) B_k x^{n-k}`.
pub fn bernoulli_polynomial(n: usize, x: &Rational) -> Rational {
    // Horner in x over coefficients C(n, k) B_k, highest power first
    (0..=n).fold(Rational::zero(), |acc, k| {
        acc * x + bernoulli_number(k) * Rational::from_integer(binomial(n as i64, k as i64))
    })
}

/// `B_n` reduced into `Z / m`.
pub fn bernoulli_mod(n: usize, m: &Modulus) -> Result<Residue> {
    reduce_rational(&bernoulli_number(n), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_prime, ratio};
    use crate::error::Error;

    #[test]
    fn number_examples() {
        assert_eq!(bernoulli_number(0), ratio(1, 1));
        assert_eq!(bernoulli_number(1), ratio(-1, 2));
        assert_eq!(bernoulli_number(2), ratio(1, 6));
        assert_eq!(bernoulli_number(3), ratio(0, 1));
        assert_eq!(bernoulli_number(4), ratio(-1, 30));
        assert_eq!(bernoulli_number(12), ratio(-691, 2730));
    }

    #[test]
    fn polynomial_examples() {
        for n in 0..10 {
            assert_eq!(bernoulli_polynomial(n, &ratio(0, 1)), bernoulli_number(n));
        }
        assert_eq!(bernoulli_polynomial(3, &ratio(1, 3)), ratio(1, 27));
        assert_eq!(bernoulli_polynomial(2, &ratio(1, 1)), ratio(1, 6));
        // B_1(x) = x - 1/2
        assert_eq!(bernoulli_polynomial(1, &ratio(3, 4)), ratio(1, 4));
    }

    #[test]
    fn residue_examples() {
        let m5 = Modulus::new(5, 1).unwrap();
        let m7 = Modulus::new(7, 1).unwrap();
        assert_eq!(bernoulli_mod(2, &m5).unwrap().value(), &BigInt::from(1));
        assert_eq!(bernoulli_mod(3, &m7).unwrap().value(), &BigInt::from(0));
        // B_4 = -1/30 has 5 in the denominator
        assert!(matches!(
            bernoulli_mod(4, &m5),
            Err(Error::DenominatorNotCoprime { prime: 5, .. })
        ));
    }

    #[test]
    fn private_table_matches_global() {
        let t = BernoulliTable::new();
        assert!(t.is_empty());
        assert_eq!(t.get(20), bernoulli_number(20));
        assert_eq!(t.len(), 21);
    }

    #[test]
    fn von_staudt_clausen_small() {
        for n in (2..=30).step_by(2) {
            let expected: u64 = (2..=n as u64 + 1)
                .filter(|&q| is_prime(q) && (n as u64).is_multiple_of(q - 1))
                .product();
            assert_eq!(
                bernoulli_number(n).denom(),
                &BigInt::from(expected),
                "n={n}"
            );
        }
    }
}
