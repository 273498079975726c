use blowup::cohomology::{
    exponent_lower_bound, h1_filtered, h1_tensor, lattice_order_check, level_descent_diagnostic, summand_count_check,
    verify_splitting, vp_factorial_quotient, Schedule,
};
use blowup::golden::{check_table, golden_table, golden_tables, RowStatus};
use blowup::AbelianPGroup;

#[test]
fn appendix_rows() {
    for table in golden_tables() {
        for row in check_table(&table, None).unwrap() {
            assert!(row.passes(), "p={} d={}: {:?}", row.p, row.d, row);
            if !(row.p == 3 && row.d == 8) {
                assert_eq!(row.status, RowStatus::Match, "p={} d={}", row.p, row.d);
            }
        }
    }
}

#[test]
fn flagged_row_is_consistent_and_differs_from_print() {
    let checks = check_table(&golden_table(3).unwrap(), Some(8)).unwrap();
    let row = &checks[0];
    assert_eq!(
        row.status,
        RowStatus::KnownDiscrepancy { contains_previous: true, new_summands: 15, expected_new: 15 }
    );
    assert_eq!(row.computed_group().to_table_text(), "28 × 3  20 × 3^2  12 × 3^3  4 × 3^4");
}

#[test]
fn spec_rows() {
    let g = |p, c: &[(u32, usize)]| AbelianPGroup::from_multiplicities(p, c).unwrap();
    assert_eq!(h1_filtered(11, 5, 0).unwrap().total_group(), g(11, &[(1, 57), (2, 43), (3, 29), (4, 15), (5, 1)]));
    assert_eq!(h1_filtered(3, 9, 0).unwrap().total_group().to_table_text(), "32 × 3  24 × 3^2  16 × 3^3  8 × 3^4  1 × 3^5");
}

#[test]
fn exponent_bound_attained_on_appendix_ranges() {
    for table in golden_tables() {
        for d in 1..=table.d_max() {
            let g = h1_tensor(table.p, d, 0).unwrap();
            assert!(g.max_exponent() >= exponent_lower_bound(table.p, d));
            assert_eq!(g.max_exponent(), exponent_lower_bound(table.p, d), "p={} d={d}", table.p);
        }
    }
}

#[test]
fn finiteness_and_level_independence() {
    for p in [2u64, 3, 5] {
        for d in 1..=6 {
            let base = h1_tensor(p, d, 0).unwrap();
            for m in 1..=3 {
                assert_eq!(h1_tensor(p, d, m).unwrap(), base, "p={p} d={d} m={m}");
            }
        }
    }
}

#[test]
fn splitting_up_to_six() {
    for p in [2u64, 3, 5] {
        for d in 1..=6 {
            let c = verify_splitting(p, d).unwrap();
            assert!(c.holds(), "p={p} d={d}: {} vs {}", c.direct, c.filtered);
            assert_eq!(c.basis_size, (d as usize + 1).pow(2));
        }
    }
}

#[test]
fn order_bookkeeping() {
    for p in [2u64, 3, 5, 7, 11] {
        for d in 1..=8 {
            let l = lattice_order_check(p, d).unwrap();
            assert!(l.holds(), "p={p} d={d}: {l:?}");
            let s = summand_count_check(p, d).unwrap();
            assert!(s.holds(), "p={p} d={d}: {s:?}");
            if s.full_rank {
                assert_eq!(s.count, (p as usize - 1) * d as usize - 1);
            }
        }
    }
}

#[test]
fn factorial_quotient_bound() {
    for p in [2u64, 3, 5, 7] {
        for m in 0..=3 {
            for d in 1..=200 {
                assert!(vp_factorial_quotient(d, p, m).unwrap().holds, "d={d} p={p} m={m}");
            }
        }
    }
}

#[test]
fn descent_rows_respect_bound() {
    for (p, m) in [(3u64, 1u32), (3, 2), (5, 1), (5, 2), (7, 1)] {
        let diag = level_descent_diagnostic(p, m, 12, Schedule::Sqrt).unwrap();
        assert!(diag.bounds_respected());
        for r in &diag.rows {
            let expect = (r.max_exponent as i64 - r.vp_quotient as i64 - r.n as i64).max(0) as u32;
            assert_eq!(r.exact_exponent, expect);
        }
    }
}

#[test]
fn zero_schedule_at_level_zero_gives_bound() {
    for p in [3u64, 5, 7] {
        let diag = level_descent_diagnostic(p, 0, 6, Schedule::Zero).unwrap();
        for r in &diag.rows {
            assert_eq!(r.exact_exponent, exponent_lower_bound(p, r.d as u32));
        }
    }
}
