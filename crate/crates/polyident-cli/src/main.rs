//! polyident: exact identifiability checks for convex polytopes.
//!
//! Exit codes: 0 identifiable, 1 not identifiable, 2 any error.

mod bench;
mod check;
mod gen;
mod sample;
mod stats;
mod vertices;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "polyident",
    version,
    about = "Exact identifiability checks for convex polytopes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether a polytope is identifiable
    Check(check::CheckArgs),
    /// Convert an H-representation to its vertex representation
    Vertices(vertices::VerticesArgs),
    /// Generate a dataset of random polytopes
    Gen(gen::GenArgs),
    /// Aggregate identifiability statistics over a dataset directory
    Stats(stats::StatsArgs),
    /// Time the generator-based and brute-force methods on random polytopes
    Bench(bench::BenchArgs),
}

/// Anything that aborts a command; printed to stderr with exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Node-expansion budget for the automorphism search; the environment
/// variable POLYIDENT_SEARCH_BUDGET overrides the default.
pub fn search_budget() -> CliResult<u64> {
    match std::env::var("POLYIDENT_SEARCH_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError(format!("invalid POLYIDENT_SEARCH_BUDGET value {s:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(polyident::DEFAULT_SEARCH_BUDGET),
        Err(e) => Err(e.into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Check(args) => check::run(args),
        Cmd::Vertices(args) => vertices::run(args),
        Cmd::Gen(args) => gen::run(args),
        Cmd::Stats(args) => stats::run(args),
        Cmd::Bench(args) => bench::run(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
