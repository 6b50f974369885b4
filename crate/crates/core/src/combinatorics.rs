//! Binomial coefficients and harmonic power sums.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use parking_lot::RwLock;

use crate::arith::{Integer, Rational};

/// Memoized rows of Pascal's triangle, grown on demand.
///
/// Row `n` is built from row `n - 1`, so asking for a large `n` materializes
/// every smaller row as well. Rows are shared behind `Arc` and never mutated
/// once published.
#[derive(Debug, Default)]
pub struct BinomialCache {
    rows: RwLock<Vec<Arc<Vec<Integer>>>>,
}

impl BinomialCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide shared cache.
    pub fn global() -> &'static BinomialCache {
        static CACHE: OnceLock<BinomialCache> = OnceLock::new();
        CACHE.get_or_init(BinomialCache::new)
    }

    /// Row `n` of Pascal's triangle: `C(n, 0), ..., C(n, n)`.
    pub fn row(&self, n: usize) -> Arc<Vec<Integer>> {
        if let Some(row) = self.rows.read().get(n) {
            return Arc::clone(row);
        }
        let mut rows = self.rows.write();
        if rows.is_empty() {
            rows.push(Arc::new(vec![BigInt::one()]));
        }
        while rows.len() <= n {
            let prev = Arc::clone(rows.last().expect("non-empty"));
            let mut next = Vec::with_capacity(prev.len() + 1);
            next.push(BigInt::one());
            next.extend(prev.windows(2).map(|w| &w[0] + &w[1]));
            next.push(BigInt::one());
            rows.push(Arc::new(next));
        }
        Arc::clone(&rows[n])
    }

    /// `C(n, k)`, zero when `k` lies outside `[0, n]` or `n < 0`.
    pub fn get(&self, n: i64, k: i64) -> Integer {
        if n < 0 || k < 0 || k > n {
            return BigInt::zero();
        }
        self.row(n as usize)[k as usize].clone()
    }

    pub fn cached_rows(&self) -> usize {
        self.rows.read().len()
    }
}

/// `C(n, k)` from the shared cache; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Integer {
    BinomialCache::global().get(n, k)
}

/// `C(2n, n)`.
pub fn central_binomial(n: i64) -> Integer {
    binomial(2 * n, n)
}

/// `sum_{j=1}^{n} 1 / j^m` as an exact rational.
pub fn harmonic_power_sum(n: u64, m: u32) -> Rational {
    // Sum over a common denominator, normalize once.
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for j in 1..=n {
        let jm = num_traits::pow(BigInt::from(j), m as usize);
        num = num * &jm + &den;
        den *= jm;
    }
    Rational::new(num, den)
}
