use apery_core::arith::{is_prime, ratio, Rational};
use apery_core::bernoulli::{bernoulli_number, bernoulli_polynomial};
use apery_core::combinatorics::binomial;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

#[test]
fn defining_recurrence_through_60() {
    for n in 1..=60i64 {
        let sum: Rational = (0..=n)
            .map(|k| Rational::from_integer(binomial(n + 1, k)) * bernoulli_number(k as usize))
            .sum();
        assert!(sum.is_zero(), "recurrence fails at n={n}");
    }
}

#[test]
fn odd_indices_vanish() {
    assert_eq!(bernoulli_number(1), ratio(-1, 2));
    for k in 1..=29 {
        assert!(bernoulli_number(2 * k + 1).is_zero(), "B_{}", 2 * k + 1);
    }
}

#[test]
fn von_staudt_clausen_denominators() {
    for n in 1..=30usize {
        let b = bernoulli_number(2 * n);
        let primes: Vec<u64> = (2..=(2 * n as u64 + 1))
            .filter(|&q| is_prime(q) && (2 * n as u64).is_multiple_of(q - 1))
            .collect();
        let product: BigInt = primes.iter().map(|&q| BigInt::from(q)).product();
        assert_eq!(b.denom(), &product, "denominator of B_{}", 2 * n);

        let shifted = primes
            .iter()
            .fold(b.clone(), |acc, &q| acc + ratio(1, q as i64));
        assert!(shifted.is_integer(), "B_{} + sum 1/q not integral", 2 * n);
    }
}

#[test]
fn polynomial_values_at_endpoints() {
    for n in 0..=20usize {
        let at_zero = bernoulli_polynomial(n, &Rational::zero());
        assert_eq!(at_zero, bernoulli_number(n));
        let at_one = bernoulli_polynomial(n, &Rational::one());
        let expected = if n == 1 {
            ratio(1, 2)
        } else {
            bernoulli_number(n)
        };
        assert_eq!(at_one, expected, "B_{n}(1)");
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=30).prop_map(|(a, b)| ratio(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn difference_identity(x in rational(), n in 1usize..=20) {
        let lhs = bernoulli_polynomial(n, &(&x + Rational::one())) - bernoulli_polynomial(n, &x);
        let rhs = Rational::from_integer(BigInt::from(n)) * num_traits::pow(x.clone(), n - 1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflection_identity(x in rational(), n in 0usize..=20) {
        let lhs = bernoulli_polynomial(n, &(Rational::one() - &x));
        let rhs = bernoulli_polynomial(n, &x);
        let rhs = if n % 2 == 0 { rhs } else { -rhs };
        prop_assert_eq!(lhs, rhs);
    }
}
