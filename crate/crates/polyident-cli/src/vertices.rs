use std::fs;
use std::path::PathBuf;

use clap::Args;
use polyident::polytope::{parse_input_json, InputDoc};
use polyident::{enumerate_vertices, EnumerateOptions};

use crate::{CliError, CliResult};

#[derive(Args)]
pub struct VerticesArgs {
    /// H-representation JSON file
    input: PathBuf,
    /// Output path for the vertex-representation JSON
    out: PathBuf,
    /// Reject unbounded systems up front
    #[arg(long)]
    check_bounded: bool,
    #[arg(long, short)]
    quiet: bool,
}

pub fn run(args: VerticesArgs) -> CliResult<u8> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| CliError(format!("{}: {e}", args.input.display())))?;
    let hrep = match parse_input_json(&text)? {
        InputDoc::HRep(h) => h,
        InputDoc::Polytope(_) => {
            return Err(CliError(
                "input is already a vertex representation".into(),
            ))
        }
    };
    let opts = EnumerateOptions {
        check_bounded: args.check_bounded,
        ..EnumerateOptions::default()
    };
    let poly = enumerate_vertices(&hrep, &opts)?;
    fs::write(&args.out, poly.to_json_string())
        .map_err(|e| CliError(format!("{}: {e}", args.out.display())))?;
    if !args.quiet {
        println!("{} vertices -> {}", poly.vertex_count(), args.out.display());
    }
    Ok(0)
}
