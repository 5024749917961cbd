use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::Args;
use polyident::{check_identifiability_with_budget, Polytope};

use crate::{CliError, CliResult};

#[derive(Args)]
pub struct StatsArgs {
    /// Directory of polytope JSON files
    in_dir: PathBuf,
    /// Write the summary JSON here (it is always printed to stdout)
    #[arg(long)]
    json_out: Option<PathBuf>,
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Default)]
struct Tally {
    total: u64,
    identifiable: u64,
}

fn fraction(t: &Tally) -> Option<f64> {
    (t.total > 0).then(|| t.identifiable as f64 / t.total as f64)
}

pub fn run(args: StatsArgs) -> CliResult<u8> {
    let budget = crate::search_budget()?;
    let mut files: Vec<PathBuf> = fs::read_dir(&args.in_dir)
        .map_err(|e| CliError(format!("{}: {e}", args.in_dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    files.sort(); // directory order is not deterministic; name order is

    let mut overall = Tally::default();
    let mut per_dim: BTreeMap<usize, Tally> = BTreeMap::new();
    let mut skipped = 0u64;
    for path in &files {
        let verdict = fs::read_to_string(path)
            .map_err(CliError::from)
            .and_then(|text| Ok(Polytope::from_json_str(&text)?))
            .and_then(|poly| {
                let report = check_identifiability_with_budget(&poly, budget)?;
                Ok((poly.dim(), report.identifiable))
            });
        match verdict {
            Ok((dim, identifiable)) => {
                overall.total += 1;
                overall.identifiable += identifiable as u64;
                let t = per_dim.entry(dim).or_default();
                t.total += 1;
                t.identifiable += identifiable as u64;
            }
            Err(e) => {
                skipped += 1;
                if !args.quiet {
                    eprintln!("skip {}: {e}", path.display());
                }
            }
        }
    }

    let per_dim_json: BTreeMap<String, serde_json::Value> = per_dim
        .iter()
        .map(|(dim, t)| {
            (
                dim.to_string(),
                serde_json::json!({
                    "total": t.total,
                    "identifiable": t.identifiable,
                    "fraction": fraction(t),
                }),
            )
        })
        .collect();
    let summary = serde_json::json!({
        "schema_version": 1,
        "total": overall.total,
        "identifiable": overall.identifiable,
        "skipped": skipped,
        "fraction": fraction(&overall),
        "per_dim": per_dim_json,
    });
    let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    text.push('\n');
    if let Some(path) = &args.json_out {
        fs::write(path, &text).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    }
    if !args.quiet {
        print!("{text}");
    }
    Ok(0)
}
