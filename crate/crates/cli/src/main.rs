mod appendix;
mod cache;
mod diagnose;
mod failure;
mod h1;
mod lift;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use failure::Failure;

#[derive(Parser)]
#[command(name = "blowup", version, about = "Cohomology of arithmetic differential operators on the blown-up projective line")]
struct Cli {
    /// Worker threads for independent cells (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Directory for cached H¹ reports.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute H¹ of the order-≤d operator sheaf.
    H1(h1::Args),
    /// Recompute the published tables and compare.
    Appendix(appendix::Args),
    /// Run property suites.
    Verify(verify::Args),
    /// Lift a tensor section with vanishing local data, or sample one.
    Lift(lift::Args),
    /// Level-lowering valuation diagnostic.
    Diagnose(diagnose::Args),
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Failure::usage(format!("cannot start thread pool: {e}")))?;
    }
    let cache = cli.cache.map(cache::Cache::new).transpose()?;
    match cli.command {
        Command::H1(a) => h1::run(a, cache.as_ref()),
        Command::Appendix(a) => appendix::run(a, cache.as_ref()),
        Command::Verify(a) => verify::run(a),
        Command::Lift(a) => lift::run(a),
        Command::Diagnose(a) => diagnose::run(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
