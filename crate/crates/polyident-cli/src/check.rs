use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use polyident::polytope::{parse_input_json, InputDoc};
use polyident::{
    brute_force_identifiability, check_identifiability_with_budget, enumerate_vertices,
    format_rational, EnumerateOptions, IdentifiabilityReport, Polytope, DEFAULT_BRUTE_CAP,
};

use crate::CliResult;

#[derive(Args)]
pub struct CheckArgs {
    /// Polytope or H-representation JSON file (auto-detected)
    input: PathBuf,
    /// Use the m!-sweep oracle instead of the generator method
    #[arg(long)]
    brute_force: bool,
    /// Largest vertex count the brute-force sweep accepts
    #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
    brute_cap: usize,
    /// Write the full report as JSON
    #[arg(long)]
    json_out: Option<PathBuf>,
    /// Suppress stdout; the exit code carries the verdict
    #[arg(long, short)]
    quiet: bool,
}

pub fn run(args: CheckArgs) -> CliResult<u8> {
    let poly = load_polytope(&args.input)?;
    let report = if args.brute_force {
        brute_force_identifiability(&poly, args.brute_cap)?
    } else {
        check_identifiability_with_budget(&poly, crate::search_budget()?)?
    };
    if let Some(path) = &args.json_out {
        fs::write(path, report.to_json_string())
            .map_err(|e| crate::CliError(format!("{}: {e}", path.display())))?;
    }
    if !args.quiet {
        print_report(&report);
    }
    Ok(if report.identifiable { 0 } else { 1 })
}

/// Reads either JSON representation; an H-representation is converted
/// by exact vertex enumeration (rejecting unbounded input).
pub fn load_polytope(path: &Path) -> CliResult<Polytope> {
    let text = fs::read_to_string(path)
        .map_err(|e| crate::CliError(format!("{}: {e}", path.display())))?;
    match parse_input_json(&text)? {
        InputDoc::Polytope(p) => Ok(p),
        InputDoc::HRep(h) => {
            let opts = EnumerateOptions {
                check_bounded: true,
                ..EnumerateOptions::default()
            };
            Ok(enumerate_vertices(&h, &opts)?)
        }
    }
}

/// Witness lists are truncated here; `--json-out` has the full report.
const SHOWN_WITNESSES: usize = 8;

fn print_report(report: &IdentifiabilityReport) {
    println!(
        "{}",
        if report.identifiable {
            "identifiable"
        } else {
            "not identifiable"
        }
    );
    println!("method: {}", report.method.as_str());
    println!("witnesses: {}", report.witnesses.len());
    for w in report.witnesses.iter().take(SHOWN_WITNESSES) {
        println!(
            "  perm {:?}: {}",
            w.perm.image(),
            if w.signed_perm {
                "signed permutation"
            } else {
                "NOT a signed permutation"
            }
        );
    }
    if report.witnesses.len() > SHOWN_WITNESSES {
        println!(
            "  ... {} more (write --json-out for the full list)",
            report.witnesses.len() - SHOWN_WITNESSES
        );
    }
    if let Some(ce) = &report.counterexample {
        println!("counterexample: vertex permutation {:?}", ce.perm.image());
        println!("G =");
        for i in 0..ce.linear_map.rows() {
            let row: Vec<String> = ce.linear_map.row(i).iter().map(format_rational).collect();
            println!("  [{}]", row.join(", "));
        }
    }
}
