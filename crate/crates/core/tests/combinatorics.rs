use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use polybase_core::combinatorics::*;
use polybase_core::hilbert::{series_coefficient, HilbertSeries};
use polybase_core::{ExponentSet, ExponentVector};
use proptest::prelude::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Permutations of `[m]` grouped by number of descents.
fn eulerian_by_permutations(m: usize) -> Vec<BigInt> {
    let mut counts = vec![0u64; m];
    for perm in (0..m).permutations(m) {
        let descents = perm.windows(2).filter(|w| w[0] > w[1]).count();
        counts[descents] += 1;
    }
    counts.into_iter().map(BigInt::from).collect()
}

#[test]
fn binomial_examples() {
    assert_eq!(binomial(5, 2), BigInt::from(10));
    assert_eq!(binomial(4, 0), BigInt::one());
    assert_eq!(binomial(4, 7), BigInt::zero());
    assert_eq!(binomial(-1, 0), BigInt::one());
    assert_eq!(binomial(3, -1), BigInt::zero());
}

#[test]
fn pascal_identity() {
    for a in 1..=200i64 {
        for b in 1..=a {
            assert_eq!(binomial(a, b), binomial(a - 1, b - 1) + binomial(a - 1, b), "({a},{b})");
        }
    }
}

#[test]
fn eulerian_examples() {
    assert_eq!(eulerian(1, 1).unwrap(), BigInt::one());
    assert_eq!(eulerian(2, 1).unwrap(), BigInt::one());
    assert_eq!(eulerian(2, 2).unwrap(), BigInt::one());
    assert_eq!(eulerian(3, 2).unwrap(), BigInt::from(4));
    assert_eq!(eulerian(3, 0).unwrap(), BigInt::zero());
    assert_eq!(eulerian(3, 4).unwrap(), BigInt::zero());
    assert!(eulerian_row(0).is_err());
}

#[test]
fn eulerian_rows_count_descents() {
    for m in 1..=7 {
        assert_eq!(eulerian_row(m as u32).unwrap(), eulerian_by_permutations(m), "m={m}");
    }
}

#[test]
fn eulerian_rows_sum_to_factorials() {
    for m in 1..=12u32 {
        let sum: BigInt = eulerian_row(m).unwrap().iter().sum();
        assert_eq!(sum, factorial(m));
    }
    assert!(eulerian_row(20).unwrap().iter().any(|a| a > &BigInt::from(i64::MAX / 1000)));
}

#[test]
fn worpitzky_examples() {
    assert!(worpitzky_check(3, 2));
    assert!(worpitzky_check(10, 7));
    for k in 1..=10 {
        assert!(worpitzky_check(1, k));
    }
    for m in 1..=10 {
        for k in 1..=10 {
            assert!(worpitzky_check(m, k), "({m},{k})");
        }
    }
}

#[test]
fn numerator_examples() {
    assert_eq!(numerator_from_hilbert(&big(&[1, 1, 1]), 1), big(&[1, 0, 0]));
    assert_eq!(numerator_from_hilbert(&big(&[1, 1, 1]), 0), big(&[1, 1, 1]));
    assert_eq!(numerator_from_hilbert(&big(&[1, 4, 9, 16]), 3), big(&[1, 1, 0, 0]));
    let values: Vec<BigInt> = (0..=9)
        .map(|t| {
            polybase_core::hilbert::ehrhart_formula(&polybase_core::cone::FamilyParams::new(7, 3, 2, 0).unwrap(), t)
        })
        .collect();
    assert_eq!(values[1], BigInt::from(1568));
    let h = numerator_from_hilbert(&values, 7);
    assert_eq!(&h[..7], big(&[1, 1561, 24795, 57023, 25571, 1673, 1]).as_slice());
    assert!(h[7..].iter().all(Zero::is_zero));
}

#[test]
fn compositions_are_complete_and_ordered() {
    let all = compositions(3, 3);
    assert_eq!(all.len(), 10);
    assert_eq!(all.first().unwrap(), &vec![3, 0, 0]);
    assert_eq!(all.last().unwrap(), &vec![0, 0, 3]);
    assert!(all.windows(2).all(|w| w[0] > w[1]));
    assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
    for n in 1..=5usize {
        for total in 0..=6u32 {
            assert_eq!(BigInt::from(compositions(total, n).len()), binomial(total as i64 + n as i64 - 1, n as i64 - 1));
        }
    }
}

#[test]
fn exponent_sets_are_sorted_and_deduplicated() {
    let s: ExponentSet = vec![vec![0, 2], vec![1, 1], vec![0, 2]].into();
    assert_eq!(s.len(), 2);
    assert_eq!(s.common_modulus(), Some(2));
    assert!(s.contains(&ExponentVector::new(vec![1, 1])));
    let mixed: ExponentSet = vec![vec![0, 2], vec![1, 0]].into();
    assert_eq!(mixed.common_modulus(), None);
    assert_eq!(mixed.maximal_elements().len(), 2);
    assert_eq!(s.intersection(&mixed).len(), 1);
    assert_eq!(ExponentVector::new(vec![1, 0, 3]).to_string(), "(1,0,3)");
    assert_eq!(ExponentVector::from_i64(&[1, -1]), None);
}

proptest! {
    #[test]
    fn numerator_inverts_series_expansion(h in prop::collection::vec(-50i64..50, 1..6), d in 0u32..6) {
        let series = HilbertSeries::new(big(&h), d);
        let len = h.len() + 3;
        let values: Vec<BigInt> = (0..len).map(|k| series_coefficient(&series, k)).collect();
        let mut back = numerator_from_hilbert(&values, d);
        trim_trailing_zeros(&mut back);
        prop_assert_eq!(back.as_slice(), series.numerator());
    }
}
