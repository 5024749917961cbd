//! Exact decision procedure for polytope identifiability.
//!
//! Given the vertices of a full-dimensional convex polytope, decides
//! whether every invertible linear map that permutes the vertex set is a
//! signed permutation matrix. The decision reduces to the automorphism
//! group of an edge-colored complete graph built from the vertex Gram
//! projector, so the answer is exact — all arithmetic is over arbitrary
//! precision rationals.
//!
//! The guide in `book/` walks through the whole pipeline; its chapters
//! are compiled as doc-tests below so the examples cannot drift.
//!
//! ```
//! use polyident::shapes::{cross_polytope, triangle};
//! use polyident::check_identifiability;
//!
//! // the octahedron's only vertex symmetries are signed permutations
//! assert!(check_identifiability(&cross_polytope(3)).unwrap().identifiable);
//!
//! // the triangle (1,0), (0,1), (−1,−1) admits a rogue rotation
//! let report = check_identifiability(&triangle()).unwrap();
//! assert!(!report.identifiable);
//! assert!(report.counterexample.is_some());
//! ```

pub mod automorphism;
pub mod coloring;
pub mod identifiability;
pub mod matrix;
pub mod perm;
pub mod polytope;
pub mod rational;
pub mod shapes;

pub use automorphism::{
    automorphism_generators, automorphism_generators_with_budget, brute_force_automorphisms,
    expand_group, refine_partition, sift_generators, GeneratorSet, GroupCapError,
    OrderedPartition, SearchError, TooLargeError, DEFAULT_BRUTE_CAP, DEFAULT_SEARCH_BUDGET,
};
pub use coloring::{
    build_colored_graph, coloring_matrix, ColorId, ColoredGraph, ColoringMatrix,
};
pub use identifiability::{
    brute_force_identifiability, check_identifiability, check_identifiability_with_budget,
    coloring_criterion_agrees, linear_map_for, AutomorphismWitness, IdentifiabilityError,
    IdentifiabilityReport, Method,
};
pub use matrix::{LinalgError, Mat};
pub use perm::{Permutation, PermutationError};
pub use polytope::{
    check_bounded, enumerate_vertices, random_polytope_hrep, sample_generator_config,
    validate_polytope, EnumerateError, EnumerateOptions, GeneratorConfig, HRepresentation,
    Polytope, PolytopeError, SparsityConstraint, ValidationIssue, ValidationResult,
};
pub use rational::{format_rational, parse_rational, ParseRationalError, Rational};

// Each guide chapter compiles as a doc-test (one module per chapter so
// a failure names its source file). `cfg(doctest)` keeps them out of
// real builds and rendered docs.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polytopes.md")]
    mod polytopes {}
    #[doc = include_str!("../../../book/src/coloring.md")]
    mod coloring {}
    #[doc = include_str!("../../../book/src/automorphisms.md")]
    mod automorphisms {}
    #[doc = include_str!("../../../book/src/identifiability.md")]
    mod identifiability {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/performance.md")]
    mod performance {}
}
