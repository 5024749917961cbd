//! Jerrum's filter: reduce a generating set on m points to at most
//! m - 1 generators spanning the same group.
//!
//! A forest on the points is maintained where the edge {a, b} (a < b)
//! stores a known generator whose minimal moved point is a and which
//! maps a to b. Sifting a permutation g walks it down the forest: if the
//! edge {alpha, g(alpha)} closes no cycle it is simply added. Otherwise
//! the cycle it closes is turned into a relation: let j be the smallest
//! vertex on the cycle. The product of the cycle's labels, read around
//! the cycle starting and ending at j, fixes j and — because every label
//! on the cycle fixes all points below its own edge minimum, hence all
//! points below j — everything smaller, so its minimal moved point is
//! strictly larger than j. One stored cycle edge at j is deleted (its
//! label is recoverable from the relation), g is stored on its own edge,
//! and the cycle product is sifted recursively. A multiset argument on
//! edge minima shows this terminates; each pass removes one generator,
//! and a forest on m vertices holds at most m - 1 edges.

use std::collections::BTreeMap;

use super::GeneratorSet;
use crate::perm::Permutation;

type Edge = (usize, usize);

/// Reduces `gens` to at most `m - 1` generators of the same group,
/// returned in ascending order of their forest edge `(min, max)`.
pub fn sift_generators(gens: &GeneratorSet) -> GeneratorSet {
    let mut forest: BTreeMap<Edge, Permutation> = BTreeMap::new();
    for g in &gens.generators {
        sift(gens.m, &mut forest, g.clone());
    }
    GeneratorSet {
        m: gens.m,
        generators: forest.into_values().collect(),
    }
}

fn sift(m: usize, forest: &mut BTreeMap<Edge, Permutation>, mut g: Permutation) {
    loop {
        let Some(alpha) = g.min_moved_point() else {
            return; // identity: fully expressed by the forest
        };
        let beta = g.apply(alpha);
        debug_assert!(beta > alpha);
        let Some(path) = find_path(m, forest, alpha, beta) else {
            forest.insert((alpha, beta), g);
            return;
        };
        // Directed walk around the cycle, starting at alpha: across the
        // new edge to beta, then back along the stored path.
        let mut walk = Vec::with_capacity(path.len());
        walk.push(Step {
            from: alpha,
            edge: None,
            perm: g.clone(),
        });
        for k in (0..path.len() - 1).rev() {
            let (from, to) = (path[k + 1], path[k]);
            let edge = (from.min(to), from.max(to));
            let stored = &forest[&edge];
            let perm = if from == edge.0 {
                stored.clone()
            } else {
                stored.inverse()
            };
            walk.push(Step {
                from,
                edge: Some(edge),
                perm,
            });
        }
        // Anchor the relation at the cycle's smallest vertex.
        let j = walk.iter().map(|s| s.from).min().expect("cycle is nonempty");
        let t = walk.iter().position(|s| s.from == j).unwrap();
        walk.rotate_left(t);
        let mut h = Permutation::identity(m);
        for step in &walk {
            h = step.perm.compose(&h);
        }
        debug_assert_eq!(h.apply(j), j);
        debug_assert!(h.min_moved_point().map_or(true, |p| p > j));
        // Delete a stored cycle edge incident to j; when both incident
        // edges are stored, take the smaller key for determinism.
        let out_edge = walk.first().unwrap().edge;
        let in_edge = walk.last().unwrap().edge;
        let removed = match (out_edge, in_edge) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("the new edge appears once in the cycle"),
        };
        forest.remove(&removed).expect("cycle edges are stored");
        forest.insert((alpha, beta), g);
        g = h;
    }
}

struct Step {
    from: usize,
    /// stored forest edge traversed, or None for the new generator
    edge: Option<Edge>,
    perm: Permutation,
}

/// Vertex sequence of the forest path from `a` to `b`, if connected.
fn find_path(m: usize, forest: &BTreeMap<Edge, Permutation>, a: usize, b: usize) -> Option<Vec<usize>> {
    let mut adj = vec![Vec::new(); m];
    for &(x, y) in forest.keys() {
        adj[x].push(y);
        adj[y].push(x);
    }
    let mut prev = vec![usize::MAX; m];
    prev[a] = a;
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            let mut path = vec![b];
            let mut cur = b;
            while cur != a {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in &adj[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::{automorphism_generators, expand_group};
    use crate::coloring::{build_colored_graph, coloring_matrix};
    use crate::perm::for_each_permutation;
    use crate::shapes;

    fn perm(image: &[usize]) -> Permutation {
        Permutation::from_image(image.to_vec()).unwrap()
    }

    fn group_of(gens: &GeneratorSet) -> Vec<Permutation> {
        expand_group(gens, 1_000_000).unwrap()
    }

    #[test]
    fn empty_and_identity_inputs() {
        let empty = GeneratorSet {
            m: 5,
            generators: vec![],
        };
        assert!(sift_generators(&empty).is_empty());
        let ids = GeneratorSet {
            m: 5,
            generators: vec![Permutation::identity(5); 3],
        };
        assert!(sift_generators(&ids).is_empty());
    }

    #[test]
    fn single_generator_is_kept() {
        let gens = GeneratorSet {
            m: 4,
            generators: vec![perm(&[1, 0, 3, 2])],
        };
        assert_eq!(sift_generators(&gens).generators, vec![perm(&[1, 0, 3, 2])]);
    }

    #[test]
    fn all_of_s3_reduces_to_two_generators() {
        let gens = GeneratorSet {
            m: 3,
            generators: vec![
                perm(&[0, 2, 1]),
                perm(&[1, 0, 2]),
                perm(&[1, 2, 0]),
                perm(&[2, 0, 1]),
                perm(&[2, 1, 0]),
            ],
        };
        let sifted = sift_generators(&gens);
        assert!(sifted.len() <= 2);
        assert_eq!(group_of(&sifted).len(), 6);
    }

    #[test]
    fn triangle_search_output_sifts_to_frozen_pair() {
        let g = build_colored_graph(&coloring_matrix(&shapes::triangle()).unwrap());
        let raw = automorphism_generators(&g).unwrap();
        let sifted = sift_generators(&raw);
        let images: Vec<&[usize]> = sifted.generators.iter().map(|p| p.image()).collect();
        assert_eq!(images, vec![&[1, 2, 0][..], &[0, 2, 1][..]]);
    }

    #[test]
    fn sift_preserves_group_and_respects_bound() {
        for p in [
            shapes::triangle(),
            shapes::cube(3),
            shapes::cross_polytope(3),
            shapes::cross_polytope(4),
        ] {
            let g = build_colored_graph(&coloring_matrix(&p).unwrap());
            let raw = automorphism_generators(&g).unwrap();
            let sifted = sift_generators(&raw);
            assert!(sifted.len() <= sifted.m - 1, "{:?}", p.label());
            assert_eq!(group_of(&raw), group_of(&sifted), "{:?}", p.label());
        }
    }

    #[test]
    fn sifting_the_whole_of_s5_gives_at_most_four() {
        let mut generators = Vec::new();
        for_each_permutation(5, |p| generators.push(p.clone()));
        let gens = GeneratorSet { m: 5, generators };
        let sifted = sift_generators(&gens);
        assert!(sifted.len() <= 4);
        assert_eq!(group_of(&sifted).len(), 120);
    }

    #[test]
    fn sifted_output_is_sorted_by_forest_edge() {
        let mut generators = Vec::new();
        for_each_permutation(4, |p| generators.push(p.clone()));
        let sifted = sift_generators(&GeneratorSet { m: 4, generators });
        let edges: Vec<(usize, usize)> = sifted
            .generators
            .iter()
            .map(|g| {
                let a = g.min_moved_point().unwrap();
                (a, g.apply(a))
            })
            .collect();
        assert!(edges.windows(2).all(|w| w[0] < w[1]));
    }
}
