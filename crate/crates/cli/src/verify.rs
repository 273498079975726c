use std::time::Instant;

use blowup::arith::prime_power;
use blowup::cohomology::{
    exponent_lower_bound, h1_tensor, lattice_order_check, summand_count_check, verify_splitting,
};
use blowup::lifting::LiftSolver;
use blowup::linalg::{
    cokernel_invariants, dominates_all_but_largest, kernel_lattice_basis, quotient_by_cyclic, smith_normal_form,
    AbelianPGroup, IntegerMatrix, ModuliVector,
};
use blowup::local_data::{local_data_operator, local_data_tensor, PointLift};
use blowup::operators::coeffs::coeff_table_by_recurrence;
use blowup::operators::{coeff_a, involution_sum, symbol, tensor_to_operator, CoefficientTable, TensorSection};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::failure::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Linalg,
    Coeffs,
    Localdata,
    Splitting,
    Lattice,
    Lift,
    All,
}

#[derive(clap::Args)]
pub struct Args {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Number of checks run, or the first counterexample.
type Outcome = Result<usize, Value>;

fn ensure(ok: bool, counterexample: impl FnOnce() -> Value) -> Result<(), Value> {
    if ok {
        Ok(())
    } else {
        Err(counterexample())
    }
}

/// Runs `cells` in parallel and reports the first failure in input order.
fn over<T: Sync>(cells: &[T], f: impl Fn(&T) -> Outcome + Sync + Send) -> Outcome {
    let results: Vec<Outcome> = cells.par_iter().map(f).collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(total)
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntegerMatrix {
    let entries = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    IntegerMatrix::from_entries(rows, cols, entries).expect("shape")
}

fn linalg(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut n = 0;
    for _ in 0..200 {
        let p: u64 = [2, 3, 5][rng.gen_range(0..3)];
        let (rows, cols) = (rng.gen_range(1..6), rng.gen_range(1..6));
        let m = random_matrix(&mut rng, rows, cols, (p as i64).pow(6));
        let (d, u, v) = smith_normal_form(&m);
        let product = u.mul(&m).and_then(|x| x.mul(&v)).expect("shapes");
        ensure(product == d && u.is_unimodular() && v.is_unimodular() && d.is_diagonal(), || json!({"check": "snf", "matrix": m}))?;
        n += 1;
    }
    for _ in 0..200 {
        let p: u64 = [2, 3][rng.gen_range(0..2)];
        let rows = rng.gen_range(1..5);
        let cols = rng.gen_range(1..4);
        let m = random_matrix(&mut rng, rows, cols, 40);
        let exps: Vec<u32> = (0..rows).map(|_| rng.gen_range(1..=3)).collect();
        let moduli = ModuliVector::new(exps.clone()).expect("positive");
        let g = cokernel_invariants(&m, &moduli, p).map_err(|e| json!({"check": "cokernel", "error": e.to_string()}))?;
        let basis = kernel_lattice_basis(&m, &moduli, p).map_err(|e| json!({"check": "kernel", "error": e.to_string()}))?;
        let index = IntegerMatrix::from_columns(m.cols(), &basis).and_then(|k| k.determinant()).expect("square");
        let total = prime_power(p, exps.iter().sum());
        ensure(g.order() * &index == total || g.order() * &index == -&total, || json!({"check": "cokernel order", "p": p, "matrix": m, "moduli": exps}))?;
        n += 1;
    }
    for p in [2u64, 3] {
        for exps in small_groups(3, 2) {
            let g = AbelianPGroup::new(p, exps).expect("valid");
            for a in elements(&g) {
                let q = quotient_by_cyclic(&g, &a).expect("shape");
                ensure(dominates_all_but_largest(&g, &q), || json!({"check": "cyclic quotient", "group": g, "element": a.iter().map(|x| x.to_string()).collect::<Vec<_>>()}))?;
                n += 1;
            }
        }
    }
    Ok(n)
}

/// Ascending exponent lists with at most `factors` entries, each at most `max`.
fn small_groups(factors: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..factors {
        let mut next = Vec::new();
        for g in &frontier {
            let lo = g.last().copied().unwrap_or(1);
            for e in lo..=max {
                let mut h: Vec<u32> = g.clone();
                h.push(e);
                next.push(h);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn elements(g: &AbelianPGroup) -> Vec<Vec<BigInt>> {
    let moduli: Vec<u64> = g.exponents().iter().map(|&n| g.p().pow(n)).collect();
    let order: u64 = moduli.iter().product();
    (0..order)
        .map(|mut i| {
            moduli
                .iter()
                .map(|&q| {
                    let r = i % q;
                    i /= q;
                    BigInt::from(r)
                })
                .collect()
        })
        .collect()
}

fn coeffs() -> Outcome {
    let mut n = 0;
    let table = coeff_table_by_recurrence(60);
    for s in 1..=60u64 {
        for t in 1..=s {
            let closed = coeff_a(s, t).map_err(|e| json!({"check": "closed form", "s": s, "t": t, "error": e.to_string()}))?;
            ensure(table[s as usize][t as usize] == closed, || json!({"check": "recurrence", "s": s, "t": t}))?;
            n += 1;
        }
    }
    let level0 = CoefficientTable::new(30, 2, 0).expect("level 0");
    for s in 1..=30u64 {
        for u in 1..=s {
            let want = if u < s { 0 } else if s % 2 == 0 { 1 } else { -1 };
            ensure(involution_sum(&level0, s, u) == BigInt::from(want), || json!({"check": "involution", "s": s, "u": u}))?;
            n += 1;
        }
    }
    for p in [2u64, 3, 5, 7] {
        for m in 0..=3 {
            CoefficientTable::new(60, p, m).map_err(|e| json!({"check": "integrality", "p": p, "m": m, "error": e.to_string()}))?;
            n += 1;
        }
    }
    Ok(n)
}

fn random_section(rng: &mut ChaCha8Rng, p: u64, d: u32) -> TensorSection {
    let c: Vec<BigInt> = (0..TensorSection::rank(d)).map(|_| BigInt::from(rng.gen_range(-1000i64..=1000))).collect();
    TensorSection::from_coordinates(p, 0, d, &c).expect("shape")
}

fn localdata(seed: u64) -> Outcome {
    let cells: Vec<(u64, u32)> = [2u64, 3, 5, 7].iter().flat_map(|&p| (1..=5).map(move |d| (p, d))).collect();
    over(&cells, |&(p, d)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 16 | d as u64));
        let canon = PointLift::canonical(p);
        let shifted = PointLift::new(p, (0..p).map(|a| BigInt::from(a + 7 * p)).collect()).expect("congruent");
        let mut n = 0;
        for _ in 0..20 {
            let x = random_section(&mut rng, p, d);
            let y = random_section(&mut rng, p, d);
            let sum = TensorSection::from_coordinates(
                p,
                0,
                d,
                &x.coordinates().iter().zip(y.coordinates()).map(|(a, b)| a + b).collect::<Vec<_>>(),
            )
            .expect("shape");
            let lin = local_data_tensor(&sum, &canon) == local_data_tensor(&x, &canon).plus(&local_data_tensor(&y, &canon));
            ensure(lin, || json!({"check": "linearity", "x": x, "y": y}))?;
            ensure(local_data_tensor(&x.scaled(&prime_power(p, d)), &shifted).is_zero(), || json!({"check": "p^d multiple", "x": x}))?;
            let op = local_data_operator(&tensor_to_operator(&x), &shifted).map_err(|e| json!({"check": "operator route", "error": e.to_string()}))?;
            ensure(op.slice(d, d) == local_data_tensor(&x, &shifted), || json!({"check": "top slice", "x": x}))?;
            n += 3;
        }
        let solver = LiftSolver::new(p, d, 0).map_err(|e| json!({"error": e.to_string()}))?;
        for delta in solver.samples(seed ^ p ^ d as u64, 10) {
            ensure(local_data_tensor(&delta, &shifted).is_zero(), || json!({"check": "lift independence", "section": delta}))?;
            n += 1;
        }
        Ok(n)
    })
}

fn splitting() -> Outcome {
    let cells: Vec<(u64, u32)> = [2u64, 3, 5].iter().flat_map(|&p| (1..=6).map(move |d| (p, d))).collect();
    over(&cells, |&(p, d)| {
        let c = verify_splitting(p, d).map_err(|e| json!({"p": p, "d": d, "error": e.to_string()}))?;
        ensure(c.holds(), || json!({"p": p, "d": d, "direct": c.direct, "filtered": c.filtered}))?;
        Ok(1)
    })
}

fn lattice() -> Outcome {
    let cells: Vec<(u64, u32)> = [2u64, 3, 5, 7, 11].iter().flat_map(|&p| (1..=8).map(move |d| (p, d))).collect();
    let bookkeeping = over(&cells, |&(p, d)| {
        let l = lattice_order_check(p, d).map_err(|e| json!({"p": p, "d": d, "error": e.to_string()}))?;
        ensure(l.holds(), || json!({"check": "lattice", "p": p, "d": d, "index": l.index_exponent, "graded": l.graded_exponent, "h1": l.h1_exponent_sum, "target": l.target_exponent}))?;
        let s = summand_count_check(p, d).map_err(|e| json!({"p": p, "d": d, "error": e.to_string()}))?;
        ensure(s.holds(), || json!({"check": "summands", "p": p, "d": d, "count": s.count, "expected": s.expected}))?;
        let g = h1_tensor(p, d, 0).map_err(|e| json!({"error": e.to_string()}))?;
        ensure(g.max_exponent() >= exponent_lower_bound(p, d), || json!({"check": "exponent bound", "p": p, "d": d, "group": g}))?;
        Ok(3)
    })?;
    let cells: Vec<(u64, u32)> = [2u64, 3, 5].iter().flat_map(|&p| (1..=6).map(move |d| (p, d))).collect();
    let levels = over(&cells, |&(p, d)| {
        let base = h1_tensor(p, d, 0).map_err(|e| json!({"error": e.to_string()}))?;
        for m in 1..=3 {
            let g = h1_tensor(p, d, m).map_err(|e| json!({"error": e.to_string()}))?;
            ensure(g == base, || json!({"check": "level independence", "p": p, "d": d, "m": m, "level_m": g, "level_0": base}))?;
        }
        Ok(3)
    })?;
    Ok(bookkeeping + levels)
}

fn lift(seed: u64) -> Outcome {
    let cells: Vec<(u64, u32)> = [2u64, 3, 5].iter().flat_map(|&p| (1..=6).map(move |d| (p, d))).collect();
    over(&cells, |&(p, d)| {
        let solver = LiftSolver::new(p, d, 0).map_err(|e| json!({"error": e.to_string()}))?;
        for delta in solver.samples(seed ^ (p << 8 | d as u64), 100) {
            let fail = |method: &str, e: String| json!({"method": method, "section": delta, "error": e});
            let a = solver.lift_by_solve(&delta).map_err(|e| fail("solve", e.to_string()))?;
            let b = solver.lift_by_schedule(&delta).map_err(|e| fail("schedule", e.to_string()))?;
            let diff = a.minus(&b);
            let ok = symbol(&diff).map(|s| s.is_zero()).unwrap_or(false)
                && solver.local_data(&diff).map(|v| v.is_zero()).unwrap_or(false);
            ensure(ok, || fail("difference", "lifts differ outside the kernel".into()))?;
        }
        Ok(100)
    })
}

pub fn run(args: Args) -> Result<(), Failure> {
    let suites: Vec<Suite> = match args.suite {
        Suite::All => vec![Suite::Linalg, Suite::Coeffs, Suite::Localdata, Suite::Splitting, Suite::Lattice, Suite::Lift],
        s => vec![s],
    };
    for suite in suites {
        let name = format!("{suite:?}").to_lowercase();
        let start = Instant::now();
        let outcome = match suite {
            Suite::Linalg => linalg(args.seed),
            Suite::Coeffs => coeffs(),
            Suite::Localdata => localdata(args.seed),
            Suite::Splitting => splitting(),
            Suite::Lattice => lattice(),
            Suite::Lift => lift(args.seed),
            Suite::All => unreachable!(),
        };
        eprintln!("{name}: {:.2?}", start.elapsed());
        match outcome {
            Ok(n) => println!("{name}: {n} checks passed"),
            Err(counterexample) => {
                println!("{name}: FAILED");
                println!("{}", serde_json::to_string_pretty(&counterexample).expect("json"));
                return Err(Failure::mismatch(format!("suite {name} failed")));
            }
        }
    }
    Ok(())
}
