//! Individualization-refinement search for the automorphism group of an
//! edge-colored complete graph.
//!
//! The tree root is the refined unit partition. At each non-discrete
//! node the first non-singleton cell is chosen and one branch is opened
//! per member, individualizing it and refining. The first leaf reached
//! becomes the base labeling; every other leaf proposes the permutation
//! sending the base labeling to its own, which is kept iff it actually
//! preserves the coloring. Branches whose pivot lies in the orbit of an
//! already-explored sibling (under the generators found so far that fix
//! the current path pointwise) are skipped: any automorphism below them
//! is a product of known ones.

use thiserror::Error;

use super::partition::{refine_partition, OrderedPartition};
use super::GeneratorSet;
use crate::coloring::ColoredGraph;
use crate::perm::Permutation;

/// Default cap on the number of tree-node expansions.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("automorphism search exceeded its budget of {budget} node expansions")]
    BudgetExceeded { budget: u64 },
}

/// Generators of the color-preserving permutation group, found with the
/// default expansion budget.
pub fn automorphism_generators(g: &ColoredGraph) -> Result<GeneratorSet, SearchError> {
    automorphism_generators_with_budget(g, DEFAULT_SEARCH_BUDGET)
}

pub fn automorphism_generators_with_budget(
    g: &ColoredGraph,
    budget: u64,
) -> Result<GeneratorSet, SearchError> {
    let m = g.node_count();
    let mut search = Search {
        g,
        budget,
        expansions: 0,
        base: None,
        gens: Vec::new(),
    };
    let root = refine_partition(g, &OrderedPartition::unit(m));
    let mut path = Vec::new();
    search.descend(&root, &mut path)?;
    Ok(GeneratorSet {
        m,
        generators: search.gens,
    })
}

struct Search<'a> {
    g: &'a ColoredGraph,
    budget: u64,
    expansions: u64,
    /// labeling of the first leaf reached
    base: Option<Vec<usize>>,
    gens: Vec<Permutation>,
}

impl Search<'_> {
    fn descend(
        &mut self,
        p: &OrderedPartition,
        path: &mut Vec<usize>,
    ) -> Result<(), SearchError> {
        let Some(cell) = p.first_non_singleton() else {
            self.leaf(p);
            return Ok(());
        };
        let members = p.cells()[cell].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &members {
            if self.pruned(&explored, v, path) {
                continue;
            }
            self.expansions += 1;
            if self.expansions > self.budget {
                return Err(SearchError::BudgetExceeded {
                    budget: self.budget,
                });
            }
            let child = refine_partition(self.g, &p.individualize(cell, v));
            path.push(v);
            let r = self.descend(&child, path);
            path.pop();
            r?;
            explored.push(v);
        }
        Ok(())
    }

    fn leaf(&mut self, p: &OrderedPartition) {
        let labeling = p.labeling().expect("leaf partitions are discrete");
        let Some(base) = &self.base else {
            self.base = Some(labeling);
            return;
        };
        let m = labeling.len();
        let mut image = vec![0; m];
        for k in 0..m {
            image[base[k]] = labeling[k];
        }
        let perm = Permutation::from_image(image).expect("labelings are bijective");
        if !perm.is_identity() && self.g.preserved_by(&perm) && !self.gens.contains(&perm) {
            self.gens.push(perm);
        }
    }

    /// Is `v` in the orbit of an explored sibling under the generators
    /// found so far that fix every node on `path`?
    fn pruned(&self, explored: &[usize], v: usize, path: &[usize]) -> bool {
        if explored.is_empty() {
            return false;
        }
        let stab: Vec<&Permutation> = self
            .gens
            .iter()
            .filter(|g| path.iter().all(|&x| g.apply(x) == x))
            .collect();
        if stab.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.g.node_count()];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(x) = stack.pop() {
            for g in &stab {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        explored.iter().any(|&u| seen[u])
    }
}
