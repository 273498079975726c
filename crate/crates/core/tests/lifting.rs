use blowup::arith::prime_power;
use blowup::lifting::{lift_by_schedule, lift_by_solve, sample_kernel_section, LiftSolver};
use blowup::operators::{coeff_a, symbol, Chart, Term, TensorSection};
use blowup::Error;
use num_bigint::BigInt;

#[test]
fn sampled_sections_lift_both_ways() {
    for p in [2u64, 3, 5] {
        for d in 1..=6 {
            let solver = LiftSolver::new(p, d, 0).unwrap();
            for delta in solver.samples(17 * p + d as u64, 20) {
                let a = solver.lift_by_solve(&delta).unwrap();
                let b = solver.lift_by_schedule(&delta).unwrap();
                let diff = a.minus(&b);
                assert!(symbol(&diff).unwrap().is_zero());
                assert!(solver.local_data(&diff).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn solve_works_at_higher_level() {
    for (p, d, m) in [(2u64, 4u32, 1u32), (3, 4, 1), (2, 5, 2)] {
        let solver = LiftSolver::new(p, d, m).unwrap();
        for delta in solver.samples(5, 5) {
            solver.lift_by_solve(&delta).unwrap();
        }
        assert!(matches!(solver.lift_by_schedule(&TensorSection::zero(p, m, d)), Err(Error::OutOfRange { .. })));
    }
}

#[test]
fn first_two_schedule_coefficients() {
    // d = 4, only A_3 set: step 1 adds a_{4,3} A_3 y^2 ∂_y^3, step 2 adds
    // -(a_{4,2} - a_{4,3} a_{3,2}) A_3 y ∂_y^2 = 36 A_3 y ∂_y^2.
    let p = 3u64;
    let a3 = prime_power(p, 4);
    let mut delta = TensorSection::zero(p, 0, 4);
    delta.a[3] = a3.clone();
    let lift = lift_by_schedule(&delta).unwrap();
    let coeff = |power, order| lift.coefficient(&Term::new(Chart::Y, power, order));
    assert_eq!(coeff(2, 3), coeff_a(4, 3).unwrap() * &a3);
    assert_eq!(coeff(2, 3), BigInt::from(12) * &a3);
    let c2 = -(coeff_a(4, 2).unwrap() - coeff_a(4, 3).unwrap() * coeff_a(3, 2).unwrap());
    assert_eq!(coeff(1, 2), c2 * &a3);
    assert_eq!(coeff(1, 2), BigInt::from(36) * &a3);
    // degree 3, A_2 only: one correction with a_{3,2} = 6
    let mut delta = TensorSection::zero(p, 0, 3);
    delta.a[2] = prime_power(p, 3);
    let lift = lift_by_schedule(&delta).unwrap();
    assert_eq!(lift.coefficient(&Term::new(Chart::Y, 1, 2)), BigInt::from(6) * prime_power(p, 3));
}

#[test]
fn samples_are_seed_stable_and_divisible() {
    for (p, d) in [(2u64, 5u32), (5, 3)] {
        let x = sample_kernel_section(p, d, 99).unwrap();
        assert_eq!(x, sample_kernel_section(p, d, 99).unwrap());
        for (s, a) in x.a.iter().enumerate() {
            assert_eq!(a % prime_power(p, d - s as u32), BigInt::from(0));
        }
        let lift = lift_by_solve(&x).unwrap();
        assert_eq!(symbol(&lift).unwrap(), x);
    }
}
