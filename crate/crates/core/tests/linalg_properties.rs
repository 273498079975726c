use std::collections::HashSet;

use blowup::arith::{prime_power, valuation};
use blowup::linalg::{
    cokernel_invariants, dominates_all_but_largest, element_order_in_cokernel, kernel_lattice_basis, quotient_by_cyclic,
    smith_normal_form, AbelianPGroup, IntegerMatrix, ModuliVector,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix_strategy(bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c).prop_map(move |v| {
            IntegerMatrix::from_entries(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

/// A small map into `⊕ Z/p^{m_j}`: (p, matrix, moduli exponents).
fn presentation_strategy() -> impl Strategy<Value = (u64, IntegerMatrix, Vec<u32>)> {
    (prop::sample::select(vec![2u64, 3]), 1usize..4, 1usize..3).prop_flat_map(|(p, r, c)| {
        (
            Just(p),
            prop::collection::vec(-30i64..=30, r * c)
                .prop_map(move |v| IntegerMatrix::from_entries(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()),
            prop::collection::vec(1u32..=3, r),
        )
    })
}

/// All vectors `M v` reduced mod the moduli, by enumerating `v` over a box
/// that covers every residue class.
fn image_set(m: &IntegerMatrix, moduli: &[BigInt]) -> HashSet<Vec<BigInt>> {
    let top = moduli.iter().max().cloned().unwrap_or_else(|| BigInt::from(1));
    let top: i64 = top.try_into().unwrap();
    let mut out = HashSet::new();
    let cols = m.cols();
    let mut v = vec![0i64; cols];
    loop {
        let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let img = m.mul_vec(&vb).unwrap();
        out.insert(img.iter().zip(moduli).map(|(x, q)| ((x % q) + q) % q).collect());
        let mut i = 0;
        loop {
            if i == cols {
                return out;
            }
            v[i] += 1;
            if v[i] < top {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_roundtrip(m in matrix_strategy(729)) {
        let (d, u, v) = smith_normal_form(&m);
        prop_assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), d.clone());
        prop_assert!(u.is_unimodular() && v.is_unimodular());
        prop_assert!(d.is_diagonal());
        let diag: Vec<BigInt> = (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn cokernel_order_bookkeeping((p, m, ms) in presentation_strategy()) {
        let moduli = ModuliVector::new(ms.clone()).unwrap();
        let group = cokernel_invariants(&m, &moduli, p).unwrap();
        let basis = kernel_lattice_basis(&m, &moduli, p).unwrap();
        let index = IntegerMatrix::from_columns(m.cols(), &basis).unwrap().determinant().unwrap().abs();
        let total: u32 = ms.iter().sum();
        prop_assert_eq!(group.order() * index, prime_power(p, total));
        let image = image_set(&m, &moduli.moduli(p));
        prop_assert_eq!(group.order(), prime_power(p, total) / BigInt::from(image.len()));
    }

    #[test]
    fn element_order_brute_force((p, m, ms) in presentation_strategy(), seed in any::<u64>()) {
        let moduli = ModuliVector::new(ms).unwrap();
        let q = moduli.moduli(p);
        let c: Vec<BigInt> = q.iter().enumerate().map(|(i, qi)| BigInt::from(seed.rotate_left(7 * i as u32) % 97) % qi).collect();
        let image = image_set(&m, &q);
        let mut j = 0u32;
        loop {
            let scaled: Vec<BigInt> = c.iter().zip(&q).map(|(x, qi)| (x * prime_power(p, j)) % qi).collect();
            if image.contains(&scaled) {
                break;
            }
            j += 1;
        }
        prop_assert_eq!(element_order_in_cokernel(&m, &moduli, p, &c).unwrap(), j);
    }

    #[test]
    fn cyclic_quotient_by_cosets(p in prop::sample::select(vec![2u64, 3]), exps in prop::collection::vec(1u32..=2, 0..4), seed in any::<u64>()) {
        let group = AbelianPGroup::new(p, exps).unwrap();
        let moduli: Vec<i64> = group.exponents().iter().map(|&n| p.pow(n) as i64).collect();
        let a: Vec<i64> = moduli.iter().enumerate().map(|(i, &q)| ((seed >> (8 * i)) % q as u64) as i64).collect();
        // subgroup <a>
        let mut sub = HashSet::new();
        let mut x = vec![0i64; a.len()];
        while sub.insert(x.clone()) {
            x = x.iter().zip(&a).zip(&moduli).map(|((u, v), q)| (u + v) % q).collect();
        }
        // |Q[p^k]| = #{x : p^k x ∈ <a>} / |<a>|, by enumerating the whole group
        let order: i64 = moduli.iter().product();
        let mut counts = Vec::new();
        for k in 1..=3u32 {
            let mut hit = 0i64;
            for idx in 0..order {
                let mut rest = idx;
                let y: Vec<i64> = moduli.iter().map(|&q| { let r = rest % q; rest /= q; (r * p.pow(k) as i64) % q }).collect();
                if sub.contains(&y) {
                    hit += 1;
                }
            }
            counts.push(valuation(&BigInt::from(hit / sub.len() as i64), p).unwrap());
        }
        // c_k - c_{k-1} factors have exponent >= k
        let mut oracle = Vec::new();
        let ge: Vec<u32> = counts.iter().scan(0, |s, &c| { let r = c - *s; *s = c; Some(r) }).collect();
        for k in 0..ge.len() {
            let next = ge.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(ge[k] - next) {
                oracle.push(k as u32 + 1);
            }
        }
        let abig: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        let q = quotient_by_cyclic(&group, &abig).unwrap();
        prop_assert_eq!(q.clone(), AbelianPGroup::new(p, oracle).unwrap());
        prop_assert!(dominates_all_but_largest(&group, &q));
    }
}

#[test]
fn spec_cyclic_examples() {
    let g = AbelianPGroup::new(2, vec![2, 3]).unwrap();
    let q = quotient_by_cyclic(&g, &[BigInt::from(2), BigInt::from(4)]).unwrap();
    // Z/4 + Z/8 has 32 elements; <(2,4)> has order 2
    assert_eq!(q.order(), BigInt::from(16));
    assert_eq!(q.exponents(), &[1, 3]);
    let g = AbelianPGroup::new(3, vec![1, 1]).unwrap();
    assert_eq!(quotient_by_cyclic(&g, &[BigInt::zero(), BigInt::zero()]).unwrap(), g);
    let g = AbelianPGroup::new(5, vec![1]).unwrap();
    assert!(quotient_by_cyclic(&g, &[BigInt::from(1)]).unwrap().is_trivial());
}
