use apery_core::sequences::{
    fit_recurrence, positive_and_even, term, term_by_recurrence, term_by_sum, TermCache,
};
use apery_core::{Error, RecurrenceShape, SequenceFamily, ShapeKind};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

// Multiplicative-formula binomial, zero outside 0 <= k <= n.
fn choose(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn signed(k: i64) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn pw(b: i64, e: i64) -> BigInt {
    if e < 0 {
        return BigInt::zero();
    }
    num_traits::pow(BigInt::from(b), e as usize)
}

// Every sum runs over the full index box and leans on zero binomials
// rather than trimmed bounds.
fn oracle(family: SequenceFamily, n: i64) -> BigInt {
    let mut total = BigInt::zero();
    for k in 0..=n {
        total += match family {
            SequenceFamily::AperyA => (choose(n, k) * choose(n + k, k)).pow(2),
            SequenceFamily::AperyB => choose(n, k).pow(2) * choose(n + k, k),
            SequenceFamily::CStar => choose(n, k).pow(2) * choose(2 * k, k),
            SequenceFamily::DombGeneral { r, s } => {
                choose(n, k).pow(r) * (choose(2 * k, k) * choose(2 * (n - k), n - k)).pow(s)
            }
            SequenceFamily::ZagierB => {
                signed(k)
                    * pw(3, n - 3 * k)
                    * choose(n, 3 * k)
                    * choose(3 * k, 2 * k)
                    * choose(2 * k, k)
            }
            SequenceFamily::AZF => {
                let franel: BigInt = (0..=k).map(|j| choose(k, j).pow(3)).sum();
                signed(k) * pw(8, n - k) * choose(n, k) * franel
            }
            SequenceFamily::Delta => {
                signed(k)
                    * pw(3, n - 3 * k)
                    * choose(n, 3 * k)
                    * choose(n + k, k)
                    * choose(3 * k, 2 * k)
                    * choose(2 * k, k)
            }
            SequenceFamily::Zeta => (0..=n)
                .map(|l| choose(n, k).pow(2) * choose(n, l) * choose(k, l) * choose(k + l, n))
                .sum(),
        };
    }
    total
}

#[test]
fn sums_match_independent_oracle() {
    let mut families = SequenceFamily::all_fixed().to_vec();
    families.extend([
        SequenceFamily::DombGeneral { r: 2, s: 2 },
        SequenceFamily::DombGeneral { r: 3, s: 1 },
        SequenceFamily::DombGeneral { r: 1, s: 1 },
    ]);
    for family in families {
        for n in 0..=25 {
            assert_eq!(
                term(family, n as usize),
                oracle(family, n),
                "{family} n={n}"
            );
        }
    }
}

#[test]
fn first_terms() {
    let cases: [(SequenceFamily, [i64; 4]); 8] = [
        (SequenceFamily::AperyA, [1, 5, 73, 1445]),
        (SequenceFamily::AperyB, [1, 3, 19, 147]),
        (SequenceFamily::CStar, [1, 3, 15, 93]),
        (SequenceFamily::DOMB, [1, 4, 28, 256]),
        (SequenceFamily::ZagierB, [1, 3, 9, 21]),
        (SequenceFamily::AZF, [1, 6, 42, 312]),
        (SequenceFamily::Delta, [1, 3, 9, 3]),
        (SequenceFamily::Zeta, [1, 3, 27, 309]),
    ];
    for (family, values) in cases {
        for (n, v) in values.into_iter().enumerate() {
            assert_eq!(term(family, n), BigInt::from(v), "{family} n={n}");
        }
    }
}

#[test]
fn stated_recurrences_match_sums_through_100() {
    let a = RecurrenceShape::APERY_A.terms(100).unwrap();
    let b = RecurrenceShape::APERY_B.terms(100).unwrap();
    for n in 0..=100 {
        assert_eq!(a[n], term_by_sum(SequenceFamily::AperyA, n), "a_{n}");
        assert_eq!(b[n], term_by_sum(SequenceFamily::AperyB, n), "b_{n}");
    }
    assert_eq!(
        term_by_recurrence(&RecurrenceShape::APERY_A, 2).unwrap(),
        BigInt::from(73)
    );
    assert_eq!(
        term_by_recurrence(&RecurrenceShape::APERY_B, 2).unwrap(),
        BigInt::from(19)
    );
}

#[test]
fn fitted_recurrences() {
    assert_eq!(
        fit_recurrence(SequenceFamily::AperyA, ShapeKind::AZ3).unwrap(),
        RecurrenceShape::AZ3 { a: 17, b: 5, c: 1 }
    );
    assert_eq!(
        fit_recurrence(SequenceFamily::AperyB, ShapeKind::Zagier2).unwrap(),
        RecurrenceShape::Zagier2 {
            a: 11,
            b: -1,
            lambda: 3
        }
    );
    let c_star = fit_recurrence(SequenceFamily::CStar, ShapeKind::Zagier2).unwrap();
    assert_eq!(
        c_star,
        RecurrenceShape::Zagier2 {
            a: 10,
            b: 9,
            lambda: 3
        }
    );
    let domb = fit_recurrence(SequenceFamily::DOMB, ShapeKind::AZ3).unwrap();
    assert_eq!(domb, RecurrenceShape::AZ3 { a: 10, b: 4, c: 64 });

    for (shape, family) in [
        (c_star, SequenceFamily::CStar),
        (domb, SequenceFamily::DOMB),
    ] {
        let terms = shape.terms(100).unwrap();
        for (n, t) in terms.iter().enumerate() {
            assert_eq!(t, &oracle(family, n as i64), "{family} n={n}");
        }
    }
}

#[test]
fn wrong_shape_is_rejected() {
    assert!(matches!(
        fit_recurrence(SequenceFamily::CStar, ShapeKind::AZ3),
        Err(Error::NoIntegerFit { .. })
    ));
    let off_by_one = RecurrenceShape::AZ3 { a: 17, b: 6, c: 1 };
    assert!(matches!(
        off_by_one.terms(10),
        Err(Error::NonIntegerStep { .. })
    ));
}

#[test]
fn all_families_integral_through_200() {
    // Sums are evaluated in integers throughout; the recurrences divide
    // exactly at every step or report NonIntegerStep.
    SequenceFamily::all_fixed().par_iter().for_each(|&family| {
        assert_eq!(term_by_sum(family, 200), term(family, 200), "{family}");
    });
    let shapes = [
        (RecurrenceShape::APERY_A, SequenceFamily::AperyA),
        (RecurrenceShape::APERY_B, SequenceFamily::AperyB),
        (
            RecurrenceShape::Zagier2 {
                a: 10,
                b: 9,
                lambda: 3,
            },
            SequenceFamily::CStar,
        ),
        (
            RecurrenceShape::AZ3 { a: 10, b: 4, c: 64 },
            SequenceFamily::DOMB,
        ),
    ];
    for (shape, family) in shapes {
        let terms = shape.terms(200).unwrap();
        assert_eq!(terms[200], term(family, 200), "{family}");
    }
}

#[test]
fn domb_positive_and_even() {
    let terms: Vec<BigInt> = (1..=200).map(|n| term(SequenceFamily::DOMB, n)).collect();
    assert!(positive_and_even(&terms));
    assert!(terms.iter().all(|t| t.is_positive()));
}

#[test]
fn concurrent_access_is_pure() {
    let families = SequenceFamily::all_fixed();
    let fresh = TermCache::new();
    let parallel: Vec<BigInt> = (0..400usize)
        .into_par_iter()
        .map(|i| fresh.get(families[i % 8], (i * 7) % 60))
        .collect();
    for (i, v) in parallel.iter().enumerate() {
        assert_eq!(v, &term_by_sum(families[i % 8], (i * 7) % 60));
    }
}
