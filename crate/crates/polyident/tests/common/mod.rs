use polyident::{
    enumerate_vertices, random_polytope_hrep, sample_generator_config, validate_polytope,
    EnumerateOptions, Polytope,
};

/// Deterministic corpus of small random polytopes: `per_dim` kept samples
/// for each requested dimension, discarding draws whose vertex count
/// exceeds `max_vertices` or that fail validation. Seeds are a fixed
/// function of (dim, attempt), so the corpus is identical on every run.
pub fn corpus(dims: &[usize], per_dim: usize, max_vertices: usize) -> Vec<Polytope> {
    let mut out = Vec::new();
    for &dim in dims {
        let mut kept = 0;
        for attempt in 0..10_000u64 {
            if kept == per_dim {
                break;
            }
            let seed = dim as u64 * 1_000_003 + attempt;
            let config = sample_generator_config(dim, seed);
            let hrep = random_polytope_hrep(&config).expect("sampled config is well formed");
            let poly = match enumerate_vertices(&hrep, &EnumerateOptions::default()) {
                Ok(p) => p,
                Err(_) => continue,
            };
            if poly.vertex_count() > max_vertices {
                continue;
            }
            if !validate_polytope(&poly, false).is_valid() {
                continue;
            }
            out.push(poly);
            kept += 1;
        }
        assert_eq!(kept, per_dim, "sampler starved in dimension {dim}");
    }
    out
}
