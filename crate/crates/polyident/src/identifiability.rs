//! The identifiability decision: a polytope is identifiable when every
//! invertible linear map that carries its vertex set onto itself is a
//! signed permutation matrix.
//!
//! A permutation π of the vertices is realized by a linear map iff it
//! preserves the coloring matrix C, and the map is then the unique
//! G = V Π V⁺. So the decision walks the generators of the coloring
//! automorphism group: the group is generated by signed permutations iff
//! every generator's map is one, because signed permutation matrices are
//! closed under product and inverse.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::automorphism::{
    automorphism_generators_with_budget, sift_generators, SearchError, TooLargeError,
    DEFAULT_SEARCH_BUDGET,
};
use crate::coloring::{build_colored_graph, coloring_matrix};
use crate::matrix::{LinalgError, Mat};
use crate::perm::{for_each_permutation, Permutation};
use crate::polytope::{validate_polytope, Polytope, ValidationResult};
use crate::rational::{format_rational, Rational};

/// One vertex permutation admitting a linear solution, together with
/// that solution and its signed-permutation test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismWitness {
    pub perm: Permutation,
    pub linear_map: Mat,
    pub signed_perm: bool,
    /// signs and coordinate permutation, present iff `signed_perm`
    pub decomposition: Option<(Vec<i8>, Permutation)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    GeneratorBased,
    BruteForce,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::GeneratorBased => "generator_based",
            Method::BruteForce => "brute_force",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentifiabilityReport {
    pub identifiable: bool,
    pub method: Method,
    /// Generator-based runs list one witness per sifted generator, in
    /// order, stopping at the first non-signed map. Brute-force runs
    /// list every permutation that admits a solution, in lexicographic
    /// order, identity included.
    pub witnesses: Vec<AutomorphismWitness>,
    /// first witness whose map is not a signed permutation
    pub counterexample: Option<AutomorphismWitness>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentifiabilityError {
    #[error("polytope failed validation: {0}")]
    InvalidPolytope(ValidationResult),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    TooLarge(#[from] TooLargeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The unique linear map G with G·V = V·Π, if one exists.
pub fn linear_map_for(p: &Polytope, perm: &Permutation) -> Result<Option<Mat>, LinalgError> {
    if perm.degree() != p.vertex_count() {
        return Err(LinalgError::DimensionMismatch {
            left_rows: p.dim(),
            left_cols: p.vertex_count(),
            right_rows: perm.degree(),
            right_cols: perm.degree(),
        });
    }
    let solver = MapSolver::new(p)?;
    Ok(solver.solve(perm))
}

/// Cross-check of the two equivalent tests for a permutation: a linear
/// solution exists iff the coloring matrix is preserved entrywise.
/// Returns whether they agree (they always should).
pub fn coloring_criterion_agrees(p: &Polytope, perm: &Permutation) -> Result<bool, LinalgError> {
    let has_map = linear_map_for(p, perm)?.is_some();
    let preserved = coloring_matrix(p)?.is_preserved_by(perm);
    Ok(has_map == preserved)
}

/// Decides identifiability via the automorphism group of the coloring
/// graph, testing only a reduced generating set.
pub fn check_identifiability(p: &Polytope) -> Result<IdentifiabilityReport, IdentifiabilityError> {
    check_identifiability_with_budget(p, DEFAULT_SEARCH_BUDGET)
}

pub fn check_identifiability_with_budget(
    p: &Polytope,
    budget: u64,
) -> Result<IdentifiabilityReport, IdentifiabilityError> {
    let start = Instant::now();
    let validation = validate_polytope(p, false);
    if !validation.is_valid() {
        return Err(IdentifiabilityError::InvalidPolytope(validation));
    }
    let cm = coloring_matrix(p)?;
    let graph = build_colored_graph(&cm);
    let raw = automorphism_generators_with_budget(&graph, budget)?;
    let sifted = sift_generators(&raw);
    let solver = MapSolver::new(p)?;

    let mut witnesses = Vec::new();
    let mut counterexample = None;
    for gen in &sifted.generators {
        let map = solver
            .solve(gen)
            .expect("group generators preserve the coloring, so their maps exist");
        let witness = make_witness(gen.clone(), map);
        let failed = !witness.signed_perm;
        if failed {
            counterexample = Some(witness.clone());
        }
        witnesses.push(witness);
        if failed {
            break; // one non-signed generator settles the verdict
        }
    }
    Ok(IdentifiabilityReport {
        identifiable: counterexample.is_none(),
        method: Method::GeneratorBased,
        witnesses,
        counterexample,
        elapsed: start.elapsed(),
    })
}

/// Independent oracle: tries all m! vertex permutations and records a
/// witness for each one admitting a solution. Refuses m above `cap`.
pub fn brute_force_identifiability(
    p: &Polytope,
    cap: usize,
) -> Result<IdentifiabilityReport, IdentifiabilityError> {
    let start = Instant::now();
    let m = p.vertex_count();
    if m > cap {
        return Err(IdentifiabilityError::TooLarge(TooLargeError { m, cap }));
    }
    let validation = validate_polytope(p, false);
    if !validation.is_valid() {
        return Err(IdentifiabilityError::InvalidPolytope(validation));
    }
    let solver = MapSolver::new(p)?;

    let mut witnesses = Vec::new();
    let mut counterexample = None;
    for_each_permutation(m, |perm| {
        if !solver.admits(perm) {
            return;
        }
        let witness = make_witness(perm.clone(), solver.construct(perm));
        if !witness.signed_perm && counterexample.is_none() {
            counterexample = Some(witness.clone());
        }
        witnesses.push(witness);
    });
    Ok(IdentifiabilityReport {
        identifiable: counterexample.is_none(),
        method: Method::BruteForce,
        witnesses,
        counterexample,
        elapsed: start.elapsed(),
    })
}

fn make_witness(perm: Permutation, map: Mat) -> AutomorphismWitness {
    let decomposition = map.decompose_signed_permutation().ok();
    AutomorphismWitness {
        perm,
        signed_perm: decomposition.is_some(),
        decomposition,
        linear_map: map,
    }
}

/// Per-polytope context for testing many permutations. A permutation π
/// admits a solution iff V·Π·C = V·Π, column by column:
///
///   Σ_k C[k][j] · v_{π(k)} = v_{π(j)}   for every j.
///
/// The test runs over i64 entries scaled to a common denominator when
/// everything fits comfortably (products are exact in i128), and falls
/// back to rational arithmetic otherwise.
struct MapSolver {
    v: Mat,
    pinv: Mat,
    c: Mat,
    fast: Option<FastTester>,
}

impl MapSolver {
    fn new(p: &Polytope) -> Result<MapSolver, LinalgError> {
        let v = p.vertex_matrix().clone();
        let pinv = v.right_pseudoinverse()?;
        let c = pinv.mul(&v).expect("pseudoinverse shape matches");
        let fast = FastTester::new(&v, &c);
        Ok(MapSolver { v, pinv, c, fast })
    }

    fn admits(&self, perm: &Permutation) -> bool {
        match &self.fast {
            Some(fast) => fast.admits(perm),
            None => self.admits_rational(perm),
        }
    }

    fn admits_rational(&self, perm: &Permutation) -> bool {
        let (n, m) = (self.v.rows(), self.v.cols());
        let pi = perm.image();
        for j in 0..m {
            // evaluate the column in full before deciding, so rejection
            // cost is uniform across permutations and polytopes
            let mut ok = true;
            for i in 0..n {
                let mut acc = Rational::zero();
                for k in 0..m {
                    let ckj = self.c.at(k, j);
                    if !ckj.is_zero() {
                        acc += ckj * self.v.at(i, pi[k]);
                    }
                }
                ok &= &acc == self.v.at(i, pi[j]);
            }
            if !ok {
                return false;
            }
        }
        true
    }

    fn construct(&self, perm: &Permutation) -> Mat {
        self.v
            .permute_cols(perm)
            .mul(&self.pinv)
            .expect("pseudoinverse shape matches")
    }

    fn solve(&self, perm: &Permutation) -> Option<Mat> {
        self.admits(perm).then(|| self.construct(perm))
    }
}

/// Entry magnitudes are capped so that a product of two scaled entries
/// stays below 2^80 and column sums below 2^87 — far inside i128.
const FAST_ENTRY_LIMIT: i64 = 1 << 40;

struct FastTester {
    n: usize,
    m: usize,
    /// λ·V, row-major n×m (λ cancels from the test)
    v: Vec<i64>,
    /// μ·C, row-major m×m
    c: Vec<i64>,
    mu: i64,
}

impl FastTester {
    fn new(v: &Mat, c: &Mat) -> Option<FastTester> {
        let (v_int, _) = clear_denominators(v)?;
        let (c_int, mu) = clear_denominators(c)?;
        Some(FastTester {
            n: v.rows(),
            m: v.cols(),
            v: v_int,
            c: c_int,
            mu,
        })
    }

    fn admits(&self, perm: &Permutation) -> bool {
        let (n, m) = (self.n, self.m);
        let pi = perm.image();
        let mu = self.mu as i128;
        for j in 0..m {
            let pj = pi[j];
            // full-column evaluation keeps rejection cost uniform
            let mut ok = true;
            for i in 0..n {
                let row = &self.v[i * m..(i + 1) * m];
                let mut acc: i128 = 0;
                for k in 0..m {
                    let ckj = self.c[k * m + j];
                    if ckj != 0 {
                        acc += ckj as i128 * row[pi[k]] as i128;
                    }
                }
                ok &= acc == mu * row[pj] as i128;
            }
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Scales a matrix by the lcm of its denominators; `None` when the lcm
/// or any scaled entry would exceed [`FAST_ENTRY_LIMIT`].
fn clear_denominators(mat: &Mat) -> Option<(Vec<i64>, i64)> {
    let mut scale = BigInt::one();
    for i in 0..mat.rows() {
        for e in mat.row(i) {
            scale = scale.lcm(e.denom());
        }
    }
    let mu = scale.to_i64().filter(|&s| s <= FAST_ENTRY_LIMIT)?;
    let mut out = Vec::with_capacity(mat.rows() * mat.cols());
    for i in 0..mat.rows() {
        for e in mat.row(i) {
            let scaled = e.numer() * (&scale / e.denom());
            let val = scaled.to_i64().filter(|v| v.abs() <= FAST_ENTRY_LIMIT)?;
            out.push(val);
        }
    }
    Some((out, mu))
}

#[derive(Serialize)]
struct WitnessDoc {
    perm: Vec<usize>,
    #[serde(rename = "G")]
    g: Vec<Vec<String>>,
    signed_perm: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    decomposition: Option<DecompositionDoc>,
}

#[derive(Serialize)]
struct DecompositionDoc {
    signs: Vec<i8>,
    perm: Vec<usize>,
}

#[derive(Serialize)]
struct ReportDoc {
    schema_version: u32,
    identifiable: bool,
    method: &'static str,
    num_generators: usize,
    generators: Vec<WitnessDoc>,
    counterexample: Option<WitnessDoc>,
    elapsed_ms: u128,
}

fn witness_doc(w: &AutomorphismWitness) -> WitnessDoc {
    WitnessDoc {
        perm: w.perm.image().to_vec(),
        g: (0..w.linear_map.rows())
            .map(|i| w.linear_map.row(i).iter().map(format_rational).collect())
            .collect(),
        signed_perm: w.signed_perm,
        decomposition: w.decomposition.as_ref().map(|(signs, perm)| DecompositionDoc {
            signs: signs.clone(),
            perm: perm.image().to_vec(),
        }),
    }
}

impl IdentifiabilityReport {
    pub fn to_json_string(&self) -> String {
        let doc = ReportDoc {
            schema_version: 1,
            identifiable: self.identifiable,
            method: self.method.as_str(),
            num_generators: self.witnesses.len(),
            generators: self.witnesses.iter().map(witness_doc).collect(),
            counterexample: self.counterexample.as_ref().map(witness_doc),
            elapsed_ms: self.elapsed.as_millis(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }
}
