//! Ordered partitions of the node set and equitable color refinement.

use thiserror::Error;

use crate::coloring::{ColorId, ColoredGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cells do not form an ordered partition of 0..{m}")]
pub struct PartitionError {
    pub m: usize,
}

/// Ordered list of disjoint nonempty cells covering `{0..m-1}`. The cell
/// ORDER is semantic: refinement and individualization insert new cells
/// at fixed positions, which keeps corresponding cells of automorphic
/// search branches at the same index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPartition {
    cells: Vec<Vec<usize>>,
}

impl OrderedPartition {
    /// The single-cell partition.
    pub fn unit(m: usize) -> Self {
        if m == 0 {
            return OrderedPartition { cells: Vec::new() };
        }
        OrderedPartition {
            cells: vec![(0..m).collect()],
        }
    }

    pub fn from_cells(m: usize, cells: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut seen = vec![false; m];
        let mut total = 0;
        for cell in &cells {
            if cell.is_empty() {
                return Err(PartitionError { m });
            }
            for &v in cell {
                if v >= m || seen[v] {
                    return Err(PartitionError { m });
                }
                seen[v] = true;
                total += 1;
            }
        }
        if total != m {
            return Err(PartitionError { m });
        }
        let cells = cells
            .into_iter()
            .map(|mut cell| {
                cell.sort_unstable();
                cell
            })
            .collect();
        Ok(OrderedPartition { cells })
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn num_nodes(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// node → index of its cell
    pub fn cell_index_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.num_nodes()];
        for (ci, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                out[v] = ci;
            }
        }
        out
    }

    /// Index of the first cell with more than one node.
    pub fn first_non_singleton(&self) -> Option<usize> {
        self.cells.iter().position(|c| c.len() > 1)
    }

    /// Splits `cells[cell]` into `[{node}, rest]`, the singleton first.
    pub fn individualize(&self, cell: usize, node: usize) -> OrderedPartition {
        debug_assert!(self.cells[cell].contains(&node));
        debug_assert!(self.cells[cell].len() > 1);
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        for (ci, c) in self.cells.iter().enumerate() {
            if ci == cell {
                cells.push(vec![node]);
                cells.push(c.iter().copied().filter(|&v| v != node).collect());
            } else {
                cells.push(c.clone());
            }
        }
        OrderedPartition { cells }
    }

    /// For a discrete partition: position k → the node in cell k.
    pub fn labeling(&self) -> Option<Vec<usize>> {
        self.is_discrete()
            .then(|| self.cells.iter().map(|c| c[0]).collect())
    }

    fn from_sorted_cells(cells: Vec<Vec<usize>>) -> OrderedPartition {
        OrderedPartition { cells }
    }
}

/// A node's view of the graph relative to a partition: its own color
/// plus the sorted multiset of (edge color, other endpoint's cell).
type Signature = (ColorId, Vec<(ColorId, usize)>);

fn signature(g: &ColoredGraph, cell_of: &[usize], v: usize) -> Signature {
    let m = g.node_count();
    let mut edges: Vec<(ColorId, usize)> = (0..m)
        .filter(|&u| u != v)
        .map(|u| (g.edge_color(v, u), cell_of[u]))
        .collect();
    edges.sort_unstable();
    (g.node_color(v), edges)
}

/// Refines until stable: nodes stay in one cell iff their signatures
/// agree. Splits replace a cell, in place, by its signature classes in
/// ascending signature order, so the result is deterministic. Never
/// merges cells and is idempotent on its own output.
pub fn refine_partition(g: &ColoredGraph, p: &OrderedPartition) -> OrderedPartition {
    debug_assert_eq!(p.num_nodes(), g.node_count());
    let mut cells = p.cells().to_vec();
    loop {
        let current = OrderedPartition::from_sorted_cells(cells.clone());
        let cell_of = current.cell_index_of();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Signature, usize)> = cell
                .iter()
                .map(|&v| (signature(g, &cell_of, v), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    if i - start != cell.len() {
                        changed = true;
                    }
                    start = i;
                }
            }
        }
        cells = next;
        if !changed {
            return OrderedPartition::from_sorted_cells(cells);
        }
    }
}
