//! Seeded random polytope generation.
//!
//! Each sample starts from the unit box (per coordinate, either [0,1] or
//! [−1,1], coin flip) and intersects it with q random relative sparsity
//! constraints ‖(s_{j₁},…,s_{j_l})‖₁ ≤ 1, each expanded into its 2^l
//! sign-pattern inequalities. The result is bounded by construction and
//! full-dimensional (a small positive multiple of the all-ones vector
//! satisfies every inequality strictly).

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{HRepresentation, PolytopeError};
use crate::matrix::Mat;
use crate::rational::Rational;

/// One relative sparsity constraint: ‖s restricted to `indices`‖₁ ≤ 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SparsityConstraint {
    pub indices: Vec<usize>,
}

/// Everything needed to rebuild one random polytope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub dim: usize,
    pub seed: u64,
    /// Per coordinate: true = constrained to [0,1], false = [−1,1].
    pub nonnegative: Vec<bool>,
    pub constraints: Vec<SparsityConstraint>,
}

/// Draws a config from the seed: each coordinate nonnegative with
/// probability 1/2, the constraint count q uniform on {2,…,n}, each
/// constraint length uniform on {2,…,n} with a uniform random index
/// subset of that size. The whole draw is determined by (dim, seed).
pub fn sample_generator_config(dim: usize, seed: u64) -> GeneratorConfig {
    assert!(dim >= 2, "generator needs dim >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nonnegative: Vec<bool> = (0..dim).map(|_| rng.gen_bool(0.5)).collect();
    let q = rng.gen_range(2..=dim);
    let constraints = (0..q)
        .map(|_| {
            let l = rng.gen_range(2..=dim);
            let mut indices = rand::seq::index::sample(&mut rng, dim, l).into_vec();
            indices.sort_unstable();
            SparsityConstraint { indices }
        })
        .collect();
    GeneratorConfig {
        dim,
        seed,
        nonnegative,
        constraints,
    }
}

/// Expands a config into inequalities: two bound rows per coordinate,
/// then 2^l sign-pattern rows per sparsity constraint.
pub fn random_polytope_hrep(config: &GeneratorConfig) -> Result<HRepresentation, PolytopeError> {
    let n = config.dim;
    if n < 2 {
        return Err(PolytopeError::InvalidConfig(format!("dim {n} < 2")));
    }
    if config.nonnegative.len() != n {
        return Err(PolytopeError::InvalidConfig(format!(
            "{} sign flags for dim {n}",
            config.nonnegative.len()
        )));
    }
    for c in &config.constraints {
        let l = c.indices.len();
        if l < 2 || l > n {
            return Err(PolytopeError::InvalidConfig(format!(
                "constraint length {l} outside 2..={n}"
            )));
        }
        if c.indices.iter().any(|&j| j >= n) {
            return Err(PolytopeError::InvalidConfig(format!(
                "constraint index out of range: {:?}",
                c.indices
            )));
        }
        if c.indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PolytopeError::InvalidConfig(format!(
                "constraint indices not strictly increasing: {:?}",
                c.indices
            )));
        }
    }

    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut b: Vec<i64> = Vec::new();
    for i in 0..n {
        let mut upper = vec![0i64; n];
        upper[i] = 1;
        rows.push(upper);
        b.push(1);
        let mut lower = vec![0i64; n];
        lower[i] = -1;
        rows.push(lower);
        b.push(if config.nonnegative[i] { 0 } else { 1 });
    }
    for c in &config.constraints {
        let l = c.indices.len();
        for mask in 0..1u32 << l {
            let mut row = vec![0i64; n];
            for (k, &j) in c.indices.iter().enumerate() {
                row[j] = if mask >> k & 1 == 1 { -1 } else { 1 };
            }
            rows.push(row);
            b.push(1);
        }
    }

    let f = rows.len();
    let data: Vec<Rational> = rows
        .into_iter()
        .flatten()
        .map(|v| Rational::from_integer(v.into()))
        .collect();
    let a = Mat::new(f, n, data).expect("rows built with width n");
    let b = b.into_iter().map(|v| Rational::from_integer(v.into())).collect();
    HRepresentation::new(n, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{check_bounded, enumerate_vertices, EnumerateOptions};
    use crate::rational::rat;

    #[test]
    fn cube_without_constraints() {
        let config = GeneratorConfig {
            dim: 3,
            seed: 0,
            nonnegative: vec![false; 3],
            constraints: vec![],
        };
        let h = random_polytope_hrep(&config).unwrap();
        assert_eq!(h.num_rows(), 6);
        let p = enumerate_vertices(&h, &EnumerateOptions::default()).unwrap();
        assert_eq!(p.vertex_count(), 8);
    }

    #[test]
    fn full_l1_constraint_dominates_bounds() {
        let config = GeneratorConfig {
            dim: 3,
            seed: 0,
            nonnegative: vec![false; 3],
            constraints: vec![SparsityConstraint {
                indices: vec![0, 1, 2],
            }],
        };
        let h = random_polytope_hrep(&config).unwrap();
        assert_eq!(h.num_rows(), 6 + 8);
        let p = enumerate_vertices(&h, &EnumerateOptions::default()).unwrap();
        // the ℓ₁ ball: bounds are redundant
        assert_eq!(p.vertex_count(), 6);
        for j in 0..6 {
            let v = p.vertex(j);
            let norm: Rational = v.iter().map(|c| c * c).sum();
            assert_eq!(norm, rat(1));
        }
    }

    #[test]
    fn sampled_configs_are_reproducible_and_in_range() {
        for seed in 0..50 {
            let a = sample_generator_config(5, seed);
            let b = sample_generator_config(5, seed);
            assert_eq!(a, b);
            assert!(a.constraints.len() >= 2 && a.constraints.len() <= 5);
            for c in &a.constraints {
                assert!(c.indices.len() >= 2 && c.indices.len() <= 5);
                assert!(c.indices.windows(2).all(|w| w[0] < w[1]));
                assert!(c.indices.iter().all(|&j| j < 5));
            }
        }
    }

    #[test]
    fn dim_two_forces_q_two() {
        for seed in 0..20 {
            let config = sample_generator_config(2, seed);
            assert_eq!(config.constraints.len(), 2);
            for c in &config.constraints {
                assert_eq!(c.indices, vec![0, 1]);
            }
        }
    }

    #[test]
    fn generated_hreps_are_bounded() {
        for seed in 0..100 {
            let config = sample_generator_config(2 + (seed as usize % 4), seed);
            let h = random_polytope_hrep(&config).unwrap();
            assert!(check_bounded(&h), "seed {seed} produced an unbounded hrep");
        }
    }

    #[test]
    fn invalid_configs_rejected() {
        let bad = GeneratorConfig {
            dim: 3,
            seed: 0,
            nonnegative: vec![false; 3],
            constraints: vec![SparsityConstraint { indices: vec![0] }],
        };
        assert!(random_polytope_hrep(&bad).is_err());
        let bad = GeneratorConfig {
            dim: 3,
            seed: 0,
            nonnegative: vec![false; 2],
            constraints: vec![],
        };
        assert!(random_polytope_hrep(&bad).is_err());
    }

    #[test]
    fn q_is_roughly_uniform() {
        // χ² against uniform on {2,3,4,5} over 10000 draws; 3σ-ish bound
        let mut counts = [0usize; 4];
        for seed in 0..10_000u64 {
            let config = sample_generator_config(5, seed ^ 0xabcdef);
            counts[config.constraints.len() - 2] += 1;
        }
        let expected = 2500.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        // df = 3; P(χ² > 16.27) ≈ 0.001
        assert!(chi2 < 16.27, "chi2 = {chi2}, counts = {counts:?}");
    }
}
