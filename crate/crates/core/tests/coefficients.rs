use std::collections::BTreeMap;

use blowup::arith::{factorial, valuation_factorial};
use blowup::operators::{coeff_a, coeff_a_level, involution_sum, q_level, CoefficientTable};
use num_bigint::BigInt;
use num_traits::Zero;

/// `(-x²∂)^s` expanded by repeated left multiplication in the Weyl algebra,
/// as `(power, order) -> coefficient`.
fn power_of_minus_x2_d(s: u32) -> BTreeMap<(u32, u32), BigInt> {
    let mut op = BTreeMap::from([((0u32, 0u32), BigInt::from(1))]);
    for _ in 0..s {
        let mut next: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (&(i, k), c) in &op {
            // -x²∂ · x^i ∂^k = -i x^{i+1} ∂^k - x^{i+2} ∂^{k+1}
            if i > 0 {
                *next.entry((i + 1, k)).or_default() -= c * BigInt::from(i);
            }
            *next.entry((i + 2, k + 1)).or_default() -= c;
        }
        next.retain(|_, c| !c.is_zero());
        op = next;
    }
    op
}

#[test]
fn closed_form_matches_weyl_expansion() {
    for s in 1..=12u32 {
        let op = power_of_minus_x2_d(s);
        let sign = if s % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        for t in 1..=s {
            let got = op.get(&(s + t, t)).cloned().unwrap_or_default();
            assert_eq!(got, &sign * coeff_a(s as u64, t as u64).unwrap(), "s={s} t={t}");
        }
        assert_eq!(op.len(), s as usize, "only x^(s+t) d^t terms appear");
    }
}

#[test]
fn frozen_small_values() {
    let expect = [(1, 1, 1), (2, 1, 2), (2, 2, 1), (3, 1, 6), (3, 2, 6), (3, 3, 1), (4, 1, 24), (4, 2, 36), (4, 3, 12), (5, 2, 240)];
    for (s, t, a) in expect {
        assert_eq!(coeff_a(s, t).unwrap(), BigInt::from(a), "a({s},{t})");
    }
}

#[test]
fn closed_form_equals_recurrence_to_60() {
    let table = blowup::operators::coeffs::coeff_table_by_recurrence(60);
    for s in 1..=60u64 {
        for t in 1..=s {
            assert_eq!(table[s as usize][t as usize], coeff_a(s, t).unwrap(), "s={s} t={t}");
        }
    }
}

#[test]
fn involution_to_30() {
    let table = CoefficientTable::new(30, 2, 0).unwrap();
    for s in 1..=30u64 {
        for u in 1..=s {
            let want = if u < s { BigInt::zero() } else if s % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
            assert_eq!(involution_sum(&table, s, u), want, "s={s} u={u}");
        }
    }
}

#[test]
fn level_coefficients_are_integers_to_60() {
    for p in [2u64, 3, 5, 7] {
        for m in 0..=3 {
            CoefficientTable::new(60, p, m).unwrap();
        }
    }
}

#[test]
fn level_coefficient_oracle() {
    // a^(m)_{s,t} = a_{s,t} * (q_s!/s!) / (q_t!/t!)
    for (s, t, p, m) in [(4u64, 2u64, 2u64, 1u32), (9, 3, 3, 1), (10, 5, 2, 2), (7, 1, 7, 1), (25, 5, 5, 1)] {
        let (qs, qt) = (q_level(s, p, m), q_level(t, p, m));
        let num = coeff_a(s, t).unwrap() * factorial(qs) * factorial(t);
        let den = factorial(s) * factorial(qt);
        assert!((&num % &den).is_zero());
        assert_eq!(coeff_a_level(s, t, p, m).unwrap(), num / den);
    }
}

#[test]
fn q_level_values() {
    assert_eq!(q_level(6, 3, 1), 2);
    assert_eq!(q_level(9, 3, 2), 1);
    assert_eq!(q_level(8, 3, 2), 0);
    assert_eq!(q_level(5, 7, 0), 5);
    assert_eq!(valuation_factorial(9, 3), 4);
}
