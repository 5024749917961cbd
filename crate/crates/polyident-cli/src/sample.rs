//! Seeded random-polytope sampling shared by `gen` and `bench`.

use polyident::{
    enumerate_vertices, random_polytope_hrep, sample_generator_config, validate_polytope,
    EnumerateError, EnumerateOptions, GeneratorConfig, Polytope,
};

pub enum Sample {
    Kept(Polytope, GeneratorConfig),
    Skipped(&'static str),
}

/// Draws one random polytope and enumerates its vertices. Samples whose
/// facet count defeats the enumeration cap, that bust `vertex_cap`, or
/// that fail validation are reported as skips, never errors: the caller
/// accounts for them and moves on to the next seed.
pub fn sample_polytope(dim: usize, seed: u64, vertex_cap: Option<usize>) -> Sample {
    let config = sample_generator_config(dim, seed);
    let hrep = random_polytope_hrep(&config).expect("sampled configs are valid");
    let poly = match enumerate_vertices(&hrep, &EnumerateOptions::default()) {
        Ok(p) => p,
        Err(EnumerateError::TooManyFacets { .. }) => {
            return Sample::Skipped("facet count over the enumeration cap")
        }
        Err(_) => return Sample::Skipped("degenerate system"),
    };
    if let Some(cap) = vertex_cap {
        if poly.vertex_count() > cap {
            return Sample::Skipped("vertex count over cap");
        }
    }
    if !validate_polytope(&poly, false).is_valid() {
        return Sample::Skipped("degenerate polytope");
    }
    Sample::Kept(poly, config)
}

/// Per-sample seed: distinct for every index, stable across runs.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    master.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}
