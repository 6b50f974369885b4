use apery_core::arith::{primes_in, rational_valuation};
use apery_core::congruence::{
    conjecture_table, mathcal_d, recover_constant, verify_cc13_cc14, verify_cc8, verify_cc9,
    verify_conjecture, verify_harmonic, verify_lifting, verify_theorem1, verify_theorem2,
    verify_wolstenholme_binomial, DEFAULT_MAGNITUDE_BOUND,
};
use apery_core::{CongruenceReport, Error, Rational, SequenceFamily};
use num_bigint::BigInt;
use rayon::prelude::*;

const CONJECTURED: [SequenceFamily; 4] = [
    SequenceFamily::ZagierB,
    SequenceFamily::AZF,
    SequenceFamily::Delta,
    SequenceFamily::Zeta,
];

fn assert_all_hold(reports: &[CongruenceReport]) {
    let failing: Vec<String> = reports
        .iter()
        .filter(|r| !r.holds)
        .map(|r| r.to_string())
        .collect();
    assert!(
        failing.is_empty(),
        "failing reports:\n{}",
        failing.join("\n")
    );
}

#[test]
fn wolstenholme_grid() {
    let mut reports = Vec::new();
    for p in primes_in(5, 31) {
        for n in 0..=6 {
            for k in 0..=n {
                reports.push(verify_wolstenholme_binomial(p, n, k).unwrap());
            }
        }
    }
    assert_eq!(reports.len(), 9 * 28);
    assert_all_hold(&reports);
}

#[test]
fn central_binomial_grids() {
    let mut reports = Vec::new();
    for p in primes_in(5, 13) {
        for n in 1..=3 {
            for k in 0..n {
                for j in 1..p {
                    reports.push(verify_cc8(p, n, k, j).unwrap());
                }
            }
        }
        for k in 0..=3 {
            for j in 1..p {
                reports.push(verify_cc9(p, k, j).unwrap());
            }
        }
    }
    assert_all_hold(&reports);
    assert!(verify_cc8(5, 1, 1, 1).is_err());
    assert!(verify_cc9(5, 0, 5).is_err());
}

#[test]
fn valuation_aware_grid() {
    let reports: Vec<_> = primes_in(5, 31)
        .into_iter()
        .flat_map(|p| (1..p).map(move |j| verify_cc13_cc14(p, j).unwrap()))
        .collect();
    assert_all_hold(&reports);
}

#[test]
fn harmonic_congruences_to_199() {
    let reports: Vec<_> = primes_in(5, 199)
        .into_par_iter()
        .flat_map(|p| verify_harmonic(p).unwrap())
        .collect();
    assert_eq!(reports.len(), 5 * primes_in(5, 199).len());
    assert_all_hold(&reports);
}

#[test]
fn theorem_sweeps_small() {
    let mut reports = Vec::new();
    for p in primes_in(5, 23) {
        for n in 1..=3 {
            for (r, s) in [(2, 1), (2, 2), (3, 1), (4, 1), (3, 2), (5, 1)] {
                reports.push(verify_theorem1(p, n, r, s).unwrap());
            }
            reports.push(verify_theorem2(p, n).unwrap());
        }
    }
    assert_all_hold(&reports);
}

#[test]
fn correction_is_p_integral() {
    // The congruence only needs the correction to be p-integral for p >= 5;
    // the value itself need not be an integer.
    assert_eq!(mathcal_d(1, 2, 1).unwrap(), Rational::new(BigInt::from(16), BigInt::from(3)));
    for n in 1..=12 {
        for (r, s) in [(2, 1), (2, 2), (3, 1), (4, 1)] {
            let d = mathcal_d(n, r, s).unwrap();
            for p in primes_in(5, 47) {
                let v = rational_valuation(&d, p).unwrap_or(i64::MAX);
                assert!(v >= 0, "correction at n={n} r={r} s={s} has p={p} in the denominator");
            }
        }
    }
}

#[test]
fn lifting_grid() {
    let mut reports = Vec::new();
    for family in [SequenceFamily::DOMB, SequenceFamily::CStar] {
        for p in [5, 7] {
            for n in 1..=3 {
                reports.push(verify_lifting(family, p, 1, n, 2000).unwrap());
            }
            reports.push(verify_lifting(family, p, 2, 1, 2000).unwrap());
        }
    }
    assert_eq!(reports.len(), 16);
    assert_all_hold(&reports);
    assert_eq!(
        verify_lifting(SequenceFamily::DOMB, 7, 3, 1, 300),
        Err(Error::IndexCapExceeded {
            index: 343,
            cap: 300
        })
    );
}

#[test]
fn conjectures_hold_at_working_modulus() {
    let reports: Vec<_> = CONJECTURED
        .par_iter()
        .flat_map_iter(|&family| {
            primes_in(5, 23)
                .into_iter()
                .flat_map(move |p| (1..=3).map(move |n| verify_conjecture(family, n, p).unwrap()))
        })
        .collect();
    assert_all_hold(&reports);
    for r in &reports {
        assert!(r.holds_to_exponent.unwrap() >= r.modulus.exponent());
    }
}

#[test]
fn recovery_is_stable_when_a_prime_is_dropped() {
    let bound = BigInt::from(DEFAULT_MAGNITUDE_BOUND);
    let primes = primes_in(5, 60);
    for family in CONJECTURED {
        let table = conjecture_table(family).unwrap();
        for n in [1u64, 4, 8] {
            let expected = BigInt::from(table[n as usize - 1]);
            let full = recover_constant(family, n, &primes, &bound).unwrap();
            assert_eq!(full.recovered.as_ref(), Some(&expected), "{family} n={n}");
            assert!(full.succeeded());
            for drop in [0, primes.len() - 1] {
                let mut fewer = primes.clone();
                fewer.remove(drop);
                let r = recover_constant(family, n, &fewer, &bound).unwrap();
                assert_eq!(
                    r.recovered.as_ref(),
                    Some(&expected),
                    "{family} n={n} without {}",
                    primes[drop]
                );
            }
        }
    }
}

#[test]
fn too_few_primes_is_reported() {
    let bound = BigInt::from(DEFAULT_MAGNITUDE_BOUND);
    let err = recover_constant(SequenceFamily::Zeta, 2, &[5, 7], &bound).unwrap_err();
    assert!(matches!(err, Error::InsufficientPrimes { .. }));
    let err = recover_constant(SequenceFamily::Zeta, 2, &[5, 7, 11, 13], &bound).unwrap_err();
    assert!(matches!(err, Error::InsufficientPrimes { .. }));
}

#[test]
fn parallel_sweep_matches_sequential() {
    let grid: Vec<(u64, u64)> = primes_in(5, 19)
        .into_iter()
        .flat_map(|p| (1..=3).map(move |n| (p, n)))
        .collect();
    let sequential: Vec<_> = grid
        .iter()
        .map(|&(p, n)| verify_theorem2(p, n).unwrap())
        .collect();
    let parallel: Vec<_> = grid
        .par_iter()
        .map(|&(p, n)| verify_theorem2(p, n).unwrap())
        .collect();
    assert_eq!(sequential, parallel);
}
