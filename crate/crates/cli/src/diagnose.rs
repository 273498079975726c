use std::fmt::Write as _;
use std::path::PathBuf;

use blowup::cohomology::{level_descent_diagnostic, LevelDiagnostic, Schedule};

use crate::failure::{check_rows, ensure_prime, Failure};
use crate::output::{emit, json, Format};

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 0)]
    m: u32,
    #[arg(long)]
    dmax: u32,
    #[arg(long, value_parser = parse_schedule, default_value = "sqrt")]
    schedule: Schedule,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_schedule(s: &str) -> Result<Schedule, String> {
    s.parse().map_err(|e: blowup::Error| e.to_string())
}

fn csv(diag: &LevelDiagnostic) -> String {
    let mut out = String::from("p,m,schedule,d,q,n,max_exponent,vp_quotient,exact_exponent,lower_bound,bound_satisfied\n");
    for r in &diag.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{:.6},{}",
            diag.p, diag.m, diag.schedule, r.d, r.q, r.n, r.max_exponent, r.vp_quotient, r.exact_exponent, r.lower_bound, r.bound_satisfied
        );
    }
    out
}

pub fn run(args: Args) -> Result<(), Failure> {
    ensure_prime(args.p)?;
    check_rows((args.p as usize + 1) * args.dmax as usize)?;
    let diag = level_descent_diagnostic(args.p, args.m, args.dmax, args.schedule)?;
    let text = match args.format {
        Format::Text => diag.to_text(),
        Format::Json => json(&diag),
        Format::Csv => csv(&diag),
    };
    emit(&text, args.out.as_deref())
}
