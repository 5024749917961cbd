//! The coloring matrix C = VᵀQ⁻¹V and the edge-colored complete graph
//! it induces.
//!
//! C is the orthogonal projector onto the row space of V, so it is
//! symmetric, idempotent, has trace n, and satisfies CVᵀ = Vᵀ. Its
//! entries are invariant under rescaling V, which is what makes the
//! graph's automorphism group a property of the polytope's shape. A
//! permutation of vertices preserves the node and edge colors exactly
//! when ΠᵀCΠ = C.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::matrix::{LinalgError, Mat};
use crate::perm::Permutation;
use crate::polytope::Polytope;
use crate::rational::{format_rational, Rational};

/// The m×m projector VᵀQ⁻¹V, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringMatrix {
    c: Mat,
}

/// Computes C for a full-row-rank vertex matrix.
pub fn coloring_matrix(p: &Polytope) -> Result<ColoringMatrix, LinalgError> {
    let v = p.vertex_matrix();
    let q = v.mul(&v.transpose()).expect("V·Vᵀ shapes agree");
    let q_inv = q.invert().map_err(|e| match e {
        LinalgError::Singular => LinalgError::RankDeficient,
        other => other,
    })?;
    let c = v
        .transpose()
        .mul(&q_inv)
        .expect("Vᵀ·Q⁻¹ shapes agree")
        .mul(v)
        .expect("VᵀQ⁻¹·V shapes agree");
    debug_assert_eq!(c, c.transpose());
    debug_assert_eq!(c.mul(&c).unwrap(), c);
    Ok(ColoringMatrix { c })
}

impl ColoringMatrix {
    pub fn matrix(&self) -> &Mat {
        &self.c
    }

    pub fn size(&self) -> usize {
        self.c.rows()
    }

    /// ΠᵀCΠ = C, checked entrywise as C[π(i)][π(j)] = C[i][j].
    pub fn is_preserved_by(&self, perm: &Permutation) -> bool {
        let m = self.size();
        debug_assert_eq!(perm.degree(), m);
        for i in 0..m {
            for j in 0..m {
                if self.c.at(perm.apply(i), perm.apply(j)) != self.c.at(i, j) {
                    return false;
                }
            }
        }
        true
    }
}

/// Dense index into a [`ColoredGraph`]'s palette.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorId(pub usize);

/// Complete graph on m nodes whose node and edge colors are the entries
/// of C, identified exactly (two cells share a color iff their entries
/// are equal rationals).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    m: usize,
    /// flattened m×m color table; the diagonal holds the node colors
    color: Vec<ColorId>,
    palette: Vec<Rational>,
}

/// Buckets the entries of C into dense color ids over a sorted palette.
pub fn build_colored_graph(c: &ColoringMatrix) -> ColoredGraph {
    let m = c.size();
    let mut palette_map: BTreeMap<&Rational, usize> = BTreeMap::new();
    for i in 0..m {
        for j in 0..m {
            palette_map.insert(c.c.at(i, j), 0);
        }
    }
    // BTreeMap iteration is ascending, which makes the palette sorted
    let palette: Vec<Rational> = palette_map.keys().map(|&r| r.clone()).collect();
    for (id, (_, slot)) in palette_map.iter_mut().enumerate() {
        *slot = id;
    }
    let color = (0..m * m)
        .map(|idx| ColorId(palette_map[c.c.at(idx / m, idx % m)]))
        .collect();
    ColoredGraph { m, color, palette }
}

impl ColoredGraph {
    pub fn node_count(&self) -> usize {
        self.m
    }

    pub fn node_color(&self, i: usize) -> ColorId {
        self.color[i * self.m + i]
    }

    /// Color of the undirected edge {i, j}; the table is symmetric, and
    /// `i == j` returns the node color.
    pub fn edge_color(&self, i: usize, j: usize) -> ColorId {
        self.color[i * self.m + j]
    }

    pub fn palette(&self) -> &[Rational] {
        &self.palette
    }

    pub fn color_value(&self, id: ColorId) -> &Rational {
        &self.palette[id.0]
    }

    /// True iff `perm` maps every node and edge to one of the same color.
    pub fn preserved_by(&self, perm: &Permutation) -> bool {
        debug_assert_eq!(perm.degree(), self.m);
        for i in 0..self.m {
            for j in i..self.m {
                if self.color[perm.apply(i) * self.m + perm.apply(j)] != self.color[i * self.m + j]
                {
                    return false;
                }
            }
        }
        true
    }

    /// Debug JSON: {"m", "node_color", "edge_color", "palette"}.
    pub fn to_debug_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc {
            m: usize,
            node_color: Vec<usize>,
            edge_color: Vec<Vec<usize>>,
            palette: Vec<String>,
        }
        let doc = Doc {
            m: self.m,
            node_color: (0..self.m).map(|i| self.node_color(i).0).collect(),
            edge_color: (0..self.m)
                .map(|i| (0..self.m).map(|j| self.edge_color(i, j).0).collect())
                .collect(),
            palette: self.palette.iter().map(format_rational).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use crate::shapes;

    #[test]
    fn cross_polytope_matches_closed_form() {
        // C_ii = 1/2, C_ij = −1/2 for antipodal pairs (|i−j| = 3), else 0
        let c = coloring_matrix(&shapes::cross_polytope(3)).unwrap();
        for i in 0..6usize {
            for j in 0..6 {
                let expected = if i == j {
                    ratio(1, 2)
                } else if i.abs_diff(j) == 3 {
                    ratio(-1, 2)
                } else {
                    rat(0)
                };
                assert_eq!(*c.matrix().at(i, j), expected, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn identity_vertices_give_identity_projector() {
        let p = Polytope::new(4, Mat::identity(4), None).unwrap();
        let c = coloring_matrix(&p).unwrap();
        assert_eq!(*c.matrix(), Mat::identity(4));
    }

    #[test]
    fn triangle_coloring_matrix() {
        let c = coloring_matrix(&shapes::triangle()).unwrap();
        let expected = Mat::from_int_rows(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]])
            .scale(&ratio(1, 3));
        assert_eq!(*c.matrix(), expected);
    }

    #[test]
    fn rank_deficient_rejected() {
        let v = Mat::from_int_rows(&[&[1, -1, 2], &[1, -1, 2]]);
        let p = Polytope::new(2, v, None).unwrap();
        assert_eq!(
            coloring_matrix(&p).unwrap_err(),
            LinalgError::RankDeficient
        );
    }

    #[test]
    fn projector_invariants() {
        for p in [shapes::cross_polytope(3), shapes::cube(3), shapes::triangle()] {
            let n = p.dim();
            let c = coloring_matrix(&p).unwrap().c;
            assert_eq!(c, c.transpose());
            assert_eq!(c.mul(&c).unwrap(), c);
            let trace: Rational = (0..c.rows()).map(|i| c.at(i, i).clone()).sum();
            assert_eq!(trace, rat(n as i64));
            let vt = p.vertex_matrix().transpose();
            assert_eq!(c.mul(&vt).unwrap(), vt);
        }
    }

    #[test]
    fn scaling_vertices_leaves_coloring_fixed() {
        let base = shapes::triangle();
        let c0 = coloring_matrix(&base).unwrap();
        for alpha in [rat(2), ratio(-3, 7), ratio(1, 5)] {
            let scaled =
                Polytope::new(2, base.vertex_matrix().scale(&alpha), None).unwrap();
            assert_eq!(coloring_matrix(&scaled).unwrap(), c0);
        }
    }

    #[test]
    fn cross_polytope_graph_structure() {
        let c = coloring_matrix(&shapes::cross_polytope(3)).unwrap();
        let g = build_colored_graph(&c);
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.palette(), &[ratio(-1, 2), rat(0), ratio(1, 2)]);
        // one node color everywhere
        assert!((1..6).all(|i| g.node_color(i) == g.node_color(0)));
        assert_eq!(*g.color_value(g.node_color(0)), ratio(1, 2));
        // the antipodal matching carries its own color, all else is 0
        for i in 0..6usize {
            for j in 0..6 {
                if i == j {
                    continue;
                }
                let expected = if i.abs_diff(j) == 3 { ratio(-1, 2) } else { rat(0) };
                assert_eq!(*g.color_value(g.edge_color(i, j)), expected);
            }
        }
    }

    #[test]
    fn identity_projector_graph_is_monochrome() {
        let p = Polytope::new(4, Mat::identity(4), None).unwrap();
        let g = build_colored_graph(&coloring_matrix(&p).unwrap());
        assert!((1..4).all(|i| g.node_color(i) == g.node_color(0)));
        let off = g.edge_color(0, 1);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(g.edge_color(i, j), off);
                }
            }
        }
    }

    #[test]
    fn triangle_graph_single_edge_color() {
        let g = build_colored_graph(&coloring_matrix(&shapes::triangle()).unwrap());
        assert_eq!(g.palette(), &[ratio(-1, 3), ratio(2, 3)]);
        assert_eq!(*g.color_value(g.node_color(0)), ratio(2, 3));
        assert_eq!(*g.color_value(g.edge_color(0, 1)), ratio(-1, 3));
    }

    #[test]
    fn preservation_matches_matrix_condition_exhaustively() {
        // every permutation of m ≤ 6 nodes, on two differently shaped graphs
        for p in [shapes::cross_polytope(3), shapes::triangle()] {
            let c = coloring_matrix(&p).unwrap();
            let g = build_colored_graph(&c);
            let m = g.node_count();
            let mut count = 0usize;
            crate::perm::for_each_permutation(m, |perm| {
                assert_eq!(g.preserved_by(perm), c.is_preserved_by(perm));
                if g.preserved_by(perm) {
                    count += 1;
                }
            });
            // S₃ for the triangle, the matching-preserving subgroup for
            // the octahedron graph
            let expected = if m == 3 { 6 } else { 48 };
            assert_eq!(count, expected);
        }
    }

    #[test]
    fn debug_json_shape() {
        let g = build_colored_graph(&coloring_matrix(&shapes::triangle()).unwrap());
        let doc: serde_json::Value = serde_json::from_str(&g.to_debug_json()).unwrap();
        assert_eq!(doc["m"], 3);
        assert_eq!(doc["palette"], serde_json::json!(["-1/3", "2/3"]));
        assert_eq!(doc["node_color"], serde_json::json!([1, 1, 1]));
        assert_eq!(doc["edge_color"][0][1], 0);
    }
}
