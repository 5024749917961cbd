use std::fs;
use std::path::PathBuf;

use clap::Args;

use crate::sample::{derive_seed, sample_polytope, Sample};
use crate::{CliError, CliResult};

#[derive(Clone, Debug)]
pub struct DimRange(pub Vec<usize>);

/// Inclusive range "3..6" (meaning 3,4,5,6) or a single value "4".
pub fn parse_dims(s: &str) -> Result<DimRange, String> {
    let one = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid dimension {t:?}"))
    };
    let dims: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (one(a)?, one(b)?);
        if a > b {
            return Err(format!("empty dimension range {s:?}"));
        }
        (a..=b).collect()
    } else {
        vec![one(s)?]
    };
    if dims.iter().any(|&d| d < 2) {
        return Err("dimensions must be at least 2".into());
    }
    Ok(DimRange(dims))
}

#[derive(Args)]
pub struct GenArgs {
    /// Inclusive dimension range, e.g. "3..6" or "4"; samples cycle
    /// through it
    #[arg(long, default_value = "3..6", value_parser = parse_dims)]
    dims: DimRange,
    /// Number of samples to attempt (skips still count)
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    count: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for the polytope JSON files (created if missing)
    #[arg(long)]
    out_dir: PathBuf,
    /// Skip samples with more vertices than this
    #[arg(long, default_value_t = 30)]
    vertex_cap: usize,
    #[arg(long, short)]
    quiet: bool,
}

pub fn run(args: GenArgs) -> CliResult<u8> {
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError(format!("{}: {e}", args.out_dir.display())))?;
    let dims = &args.dims.0;
    let mut written = 0u32;
    let mut skipped = 0u32;
    for i in 0..args.count {
        let dim = dims[i as usize % dims.len()];
        let seed = derive_seed(args.seed, i as u64);
        match sample_polytope(dim, seed, Some(args.vertex_cap)) {
            Sample::Kept(poly, config) => {
                let poly = poly.with_label(format!("random-d{dim}-s{seed}"));
                let path = args.out_dir.join(format!("poly-{i:05}.json"));
                fs::write(&path, poly.to_json_string_with_config(&config))
                    .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
                written += 1;
            }
            Sample::Skipped(reason) => {
                skipped += 1;
                if !args.quiet {
                    eprintln!("skip sample {i} (dim {dim}, seed {seed}): {reason}");
                }
            }
        }
    }
    if !args.quiet {
        let summary = serde_json::json!({
            "schema_version": 1,
            "attempted": args.count,
            "written": written,
            "skipped": skipped,
        });
        println!("{summary}");
    }
    Ok(0)
}
