//! Automorphisms of edge-colored complete graphs: a backtracking search
//! over individualization-refinement trees, a generator-reduction filter,
//! and small brute-force oracles for cross-checking.

mod partition;
mod search;
mod sift;

pub use partition::{refine_partition, OrderedPartition, PartitionError};
pub use search::{
    automorphism_generators, automorphism_generators_with_budget, SearchError,
    DEFAULT_SEARCH_BUDGET,
};
pub use sift::sift_generators;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::coloring::ColoredGraph;
use crate::perm::{for_each_permutation, Permutation};

/// Largest node count the brute-force oracle accepts by default (10! is
/// about 3.6 million permutations).
pub const DEFAULT_BRUTE_CAP: usize = 10;

/// Generating set for a permutation group on `m` points. Produced by
/// the search in leaf-discovery order; [`sift_generators`] reduces it to
/// at most `m - 1` elements spanning the same group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub m: usize,
    pub generators: Vec<Permutation>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{m} nodes exceed the brute-force cap of {cap}")]
pub struct TooLargeError {
    pub m: usize,
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("group order exceeds the cap of {cap}")]
pub struct GroupCapError {
    pub cap: usize,
}

/// Every color-preserving permutation, in lexicographic order, found by
/// trying all `m!` of them. Refuses node counts above `cap`.
pub fn brute_force_automorphisms(
    g: &ColoredGraph,
    cap: usize,
) -> Result<Vec<Permutation>, TooLargeError> {
    let m = g.node_count();
    if m > cap {
        return Err(TooLargeError { m, cap });
    }
    let mut out = Vec::new();
    for_each_permutation(m, |p| {
        if g.preserved_by(p) {
            out.push(p.clone());
        }
    });
    Ok(out)
}

/// The full group generated by `gens`, sorted lexicographically, or an
/// error once more than `cap` elements have been found.
pub fn expand_group(gens: &GeneratorSet, cap: usize) -> Result<Vec<Permutation>, GroupCapError> {
    let mut group = BTreeSet::new();
    group.insert(Permutation::identity(gens.m));
    let mut frontier: Vec<Permutation> = group.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &gens.generators {
                let y = g.compose(x);
                if group.insert(y.clone()) {
                    if group.len() > cap {
                        return Err(GroupCapError { cap });
                    }
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Ok(group.into_iter().collect())
}
