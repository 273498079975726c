use blowup::arith::prime_power;
use blowup::cohomology::h1_tensor;
use blowup::lifting::LiftSolver;
use blowup::linalg::cokernel_invariants;
use blowup::local_data::{local_data_operator, local_data_tensor, q_d_matrix_with_lifts, PointLift};
use blowup::operators::{is_global_section, tensor_to_operator, TensorSection};
use num_bigint::BigInt;
use proptest::prelude::*;

fn section_strategy() -> impl Strategy<Value = TensorSection> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), 1u32..5).prop_flat_map(|(p, d)| {
        prop::collection::vec(-500i64..=500, TensorSection::rank(d)).prop_map(move |v| {
            let c: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
            TensorSection::from_coordinates(p, 0, d, &c).unwrap()
        })
    })
}

fn shifted_lifts(p: u64, k: i64) -> PointLift {
    PointLift::new(p, (0..p).map(|a| BigInt::from(a as i64 + k * (a as i64 + 1) * p as i64)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn linear(x in section_strategy(), seed in -50i64..50) {
        let y = TensorSection { a: x.a.iter().rev().map(|c| c * seed).collect(), b: x.b.iter().map(|c| c - seed).collect(), ..x.clone() };
        let sum = TensorSection { a: x.a.iter().zip(&y.a).map(|(u, v)| u + v).collect(), b: x.b.iter().zip(&y.b).map(|(u, v)| u + v).collect(), ..x.clone() };
        let l = PointLift::canonical(x.p);
        prop_assert_eq!(local_data_tensor(&sum, &l), local_data_tensor(&x, &l).plus(&local_data_tensor(&y, &l)));
    }

    #[test]
    fn p_power_multiples_vanish(x in section_strategy()) {
        let y = x.scaled(&prime_power(x.p, x.d));
        prop_assert!(local_data_tensor(&y, &PointLift::canonical(x.p)).is_zero());
        prop_assert!(local_data_tensor(&y, &shifted_lifts(x.p, 3)).is_zero());
    }

    #[test]
    fn operator_route_agrees_on_top_slice(x in section_strategy()) {
        let op = tensor_to_operator(&x);
        prop_assert!(is_global_section(&op));
        let l = shifted_lifts(x.p, -2);
        prop_assert_eq!(local_data_operator(&op, &l).unwrap().slice(x.d, x.d), local_data_tensor(&x, &l));
    }

    #[test]
    fn kernel_independent_of_lift(p in prop::sample::select(vec![2u64, 3, 5]), d in 1u32..5, seed in any::<u64>(), k in -4i64..4) {
        let solver = LiftSolver::new(p, d, 0).unwrap();
        for delta in solver.samples(seed, 3) {
            prop_assert!(local_data_tensor(&delta, &shifted_lifts(p, k)).is_zero());
        }
    }
}

#[test]
fn cokernel_independent_of_lift() {
    for (p, d) in [(2u64, 4u32), (3, 3), (5, 2), (7, 2)] {
        let base = h1_tensor(p, d, 0).unwrap();
        for k in [-3i64, 1, 5] {
            let (m, moduli) = q_d_matrix_with_lifts(p, d, 0, &shifted_lifts(p, k)).unwrap();
            assert_eq!(cokernel_invariants(&m, &moduli, p).unwrap(), base, "p={p} d={d} k={k}");
        }
    }
}

#[test]
fn p3_d1_is_z3() {
    let g = h1_tensor(3, 1, 0).unwrap();
    assert_eq!(g.exponents(), &[1]);
}
