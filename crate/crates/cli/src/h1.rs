use std::path::PathBuf;

use crate::cache::{self, Cache};
use crate::failure::{check_rows, ensure_prime, Failure};
use crate::output::{emit, json, Format};

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    d: u32,
    #[arg(long, default_value_t = 0)]
    level: u32,
    /// Also list each degree's group.
    #[arg(long)]
    per_degree: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args, cache: Option<&Cache>) -> Result<(), Failure> {
    ensure_prime(args.p)?;
    if args.d == 0 {
        return Err(Failure::usage("d must be at least 1"));
    }
    check_rows((args.p as usize + 1) * args.d as usize)?;
    let report = cache::filtered(cache, args.p, args.d, args.level)?;
    let text = match args.format {
        Format::Text => report.to_text(args.per_degree),
        Format::Json => json(&report),
        Format::Csv => report.to_csv(args.per_degree),
    };
    emit(&text, args.out.as_deref())
}
