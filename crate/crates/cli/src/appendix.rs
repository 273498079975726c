use std::fmt::Write as _;
use std::path::PathBuf;

use blowup::cohomology::H1Report;
use blowup::golden::{golden_table, golden_tables, GoldenTable, RowCheck, RowStatus};
use blowup::AbelianPGroup;
use rayon::prelude::*;

use crate::cache::{self, Cache};
use crate::failure::{check_rows, Failure};
use crate::output::{emit, json, Format};

#[derive(clap::Args)]
pub struct Args {
    /// Fail unless every unflagged row matches.
    #[arg(long)]
    verify: bool,
    /// Restrict to one prime.
    #[arg(long)]
    p: Option<u64>,
    /// Restrict to one row (requires --p).
    #[arg(long, requires = "p")]
    d: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn checks_for(table: &GoldenTable, only: Option<u32>, cache: Option<&Cache>) -> Result<Vec<RowCheck>, Failure> {
    let d_max = only.unwrap_or(table.d_max());
    check_rows((table.p as usize + 1) * d_max as usize)?;
    let report: H1Report = cache::filtered(cache, table.p, d_max, 0)?;
    let mut cumulative = AbelianPGroup::trivial(table.p);
    let mut out = Vec::new();
    for e in &report.degrees {
        cumulative = cumulative.direct_sum(&e.group(table.p)?);
        if only.is_some_and(|d| d != e.d) {
            continue;
        }
        if let Some(row) = table.row(e.d) {
            out.push(blowup::golden::compare_row(table, row, &cumulative));
        }
    }
    Ok(out)
}

fn describe(c: &RowCheck) -> String {
    let computed = c.computed_group().to_table_text();
    match &c.status {
        RowStatus::Match => format!("p={} d={}: {computed}  [match]", c.p, c.d),
        RowStatus::Mismatch => format!("p={} d={}: {computed}  [MISMATCH, printed {}]", c.p, c.d, c.printed_group().to_table_text()),
        RowStatus::KnownDiscrepancy { contains_previous, new_summands, expected_new } => format!(
            "p={} d={}: {computed}  [known discrepancy, printed {}; contains row d-1: {}; new summands {}/{}]",
            c.p,
            c.d,
            c.printed_group().to_table_text(),
            if *contains_previous { "yes" } else { "no" },
            new_summands,
            expected_new
        ),
    }
}

pub fn run(args: Args, cache: Option<&Cache>) -> Result<(), Failure> {
    let tables = match args.p {
        Some(p) => vec![golden_table(p).ok_or_else(|| Failure::usage(format!("no published table for p = {p}")))?],
        None => golden_tables(),
    };
    if let (Some(d), Some(t)) = (args.d, tables.first()) {
        if t.row(d).is_none() {
            return Err(Failure::usage(format!("no published row d = {d} for p = {}", t.p)));
        }
    }
    let per_table = tables.par_iter().map(|t| checks_for(t, args.d, cache)).collect::<Result<Vec<_>, _>>()?;
    let checks: Vec<RowCheck> = per_table.into_iter().flatten().collect();
    let text = match (args.format, args.d) {
        (Format::Json, _) => json(&checks),
        (Format::Text, Some(_)) => format!("{}\n", checks[0].computed_group().to_table_text()),
        (Format::Text, None) => checks.iter().map(|c| describe(c) + "\n").collect(),
        (Format::Csv, _) => {
            let mut out = String::from("p,d,exponent,multiplicity\n");
            for c in &checks {
                for (n, k) in c.computed_group().multiplicities() {
                    let _ = writeln!(out, "{},{},{},{}", c.p, c.d, n, k);
                }
            }
            out
        }
    };
    emit(&text, args.out.as_deref())?;
    let failed: Vec<&RowCheck> = checks.iter().filter(|c| !c.passes()).collect();
    for c in &checks {
        if args.d.is_some() && c.status != RowStatus::Match {
            eprintln!("{}", describe(c));
        }
    }
    let matched = checks.iter().filter(|c| c.status == RowStatus::Match).count();
    eprintln!("{matched}/{} rows match the published values", checks.len());
    if args.verify && !failed.is_empty() {
        let diff: Vec<String> = failed.iter().map(|c| describe(c)).collect();
        return Err(Failure::mismatch(format!("{} row(s) differ:\n{}", failed.len(), diff.join("\n"))));
    }
    Ok(())
}
