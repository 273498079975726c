use std::path::PathBuf;

use blowup::lifting::LiftSolver;
use blowup::local_data::{local_data_tensor, q_le_d_size, PointLift};
use blowup::operators::TensorSection;

use crate::failure::{check_rows, ensure_prime, Failure, NONVANISHING};
use crate::output::{emit, json, read_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Solve,
    Schedule,
    Both,
}

#[derive(clap::Args)]
pub struct Args {
    /// Tensor section file to lift.
    #[arg(long, required_unless_present = "sample", conflicts_with = "sample")]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::Solve)]
    method: Method,
    /// Also emit the local data of the lift (all zero when sound).
    #[arg(long)]
    check: bool,
    /// Where the local data goes with --check (default: stderr).
    #[arg(long, requires = "check")]
    check_out: Option<PathBuf>,
    /// Emit a random section with vanishing local data instead of lifting.
    #[arg(long, requires_all = ["p", "d"])]
    sample: bool,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn solver_for(p: u64, d: u32, m: u32) -> Result<LiftSolver, Failure> {
    ensure_prime(p)?;
    if d == 0 {
        return Err(Failure::usage("d must be at least 1"));
    }
    check_rows(q_le_d_size(p, d))?;
    Ok(LiftSolver::new(p, d, m)?)
}

pub fn run(args: Args) -> Result<(), Failure> {
    if args.sample {
        let solver = solver_for(args.p.expect("required"), args.d.expect("required"), 0)?;
        let delta = solver.samples(args.seed, 1).remove(0);
        return emit(&json(&delta), args.out.as_deref());
    }
    let delta: TensorSection = read_json(args.input.as_deref().expect("required"))?;
    ensure_prime(delta.p)?;
    let nonzero = local_data_tensor(&delta, &PointLift::canonical(delta.p)).nonzero_coordinates();
    if !nonzero.is_empty() {
        let lines: Vec<String> = nonzero.iter().map(|((pt, k, i), r)| format!("  point {pt}, order {k}, power {i}: {r}")).collect();
        return Err(Failure::new(
            NONVANISHING,
            format!("input has nonvanishing local data at {} coordinate(s):\n{}", nonzero.len(), lines.join("\n")),
        ));
    }
    let solver = solver_for(delta.p, delta.d, delta.m)?;
    let lift = match args.method {
        Method::Solve => solver.lift_by_solve(&delta)?,
        Method::Schedule => solver.lift_by_schedule(&delta)?,
        Method::Both => {
            let a = solver.lift_by_solve(&delta)?;
            let b = solver.lift_by_schedule(&delta)?;
            let diff = a.minus(&b);
            if !solver.local_data(&diff)?.is_zero() {
                return Err(Failure::mismatch("the two lifts differ by an operator with nonzero local data"));
            }
            eprintln!("solve and schedule lifts both verified ({} differing terms)", diff.len());
            a
        }
    };
    emit(&json(&lift), args.out.as_deref())?;
    if args.check {
        let data = json(&solver.local_data(&lift)?);
        match &args.check_out {
            Some(p) => std::fs::write(p, data)?,
            None => eprint!("{data}"),
        }
    }
    Ok(())
}
