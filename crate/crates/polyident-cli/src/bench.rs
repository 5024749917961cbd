use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::Args;
use polyident::{
    brute_force_identifiability, check_identifiability_with_budget, Polytope, DEFAULT_BRUTE_CAP,
};

use crate::sample::{derive_seed, sample_polytope, Sample};
use crate::{CliError, CliResult};

pub const CSV_HEADER: &str = "m,dim,method,elapsed_ns,verdict,seed";

#[derive(Args)]
pub struct BenchArgs {
    /// Smallest vertex count to benchmark (at least 4)
    #[arg(long)]
    min_m: usize,
    /// Largest vertex count to benchmark (at most brute-cap + 1)
    #[arg(long)]
    max_m: usize,
    /// Timed samples per vertex count
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest vertex count the brute-force method is timed at
    #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
    brute_cap: usize,
    /// Sampling attempts per (m, trial) before that row is skipped
    #[arg(long, default_value_t = 2000)]
    max_retries: usize,
    #[arg(long, short)]
    quiet: bool,
}

pub fn run(args: BenchArgs) -> CliResult<u8> {
    if args.min_m < 4 {
        return Err(CliError("--min-m must be at least 4".into()));
    }
    if args.max_m < args.min_m {
        return Err(CliError("--max-m must be at least --min-m".into()));
    }
    if args.max_m > args.brute_cap + 1 {
        return Err(CliError(format!(
            "--max-m {} exceeds --brute-cap {} + 1",
            args.max_m, args.brute_cap
        )));
    }
    let budget = crate::search_budget()?;

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for m in args.min_m..=args.max_m {
        for trial in 0..args.trials {
            let Some((poly, dim, seed)) = find_sample(&args, m, trial) else {
                if !args.quiet {
                    eprintln!(
                        "skip m={m} trial={trial}: no sample with {m} vertices in {} attempts",
                        args.max_retries
                    );
                }
                continue;
            };
            // the reports time the decision call itself, I/O excluded
            let report = check_identifiability_with_budget(&poly, budget)?;
            writeln!(
                csv,
                "{m},{dim},{},{},{},{seed}",
                report.method.as_str(),
                report.elapsed.as_nanos(),
                report.identifiable
            )
            .expect("string write");
            if m <= args.brute_cap {
                let brute = brute_force_identifiability(&poly, args.brute_cap)?;
                writeln!(
                    csv,
                    "{m},{dim},{},{},{},{seed}",
                    brute.method.as_str(),
                    brute.elapsed.as_nanos(),
                    brute.identifiable
                )
                .expect("string write");
            }
        }
    }

    match &args.out {
        Some(path) => {
            fs::write(path, &csv).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
            if !args.quiet {
                println!("wrote {}", path.display());
            }
        }
        None => print!("{csv}"),
    }
    Ok(0)
}

/// Hunts for a random polytope with exactly `m` vertices, alternating
/// dimensions 3 and 4 across deterministic per-attempt seeds.
fn find_sample(args: &BenchArgs, m: usize, trial: usize) -> Option<(Polytope, usize, u64)> {
    for attempt in 0..args.max_retries {
        let dim = 3 + attempt % 2;
        let index = ((m * 1_000_000) + (trial * 10_000) + attempt) as u64;
        let seed = derive_seed(args.seed, index);
        if let Sample::Kept(poly, _) = sample_polytope(dim, seed, None) {
            if poly.vertex_count() == m {
                return Some((poly, dim, seed));
            }
        }
    }
    None
}
