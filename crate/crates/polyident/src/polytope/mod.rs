//! Polytope representations and the operations connecting them:
//! validation, exact H→V conversion, boundedness, and the random
//! generator used to build datasets.

mod enumerate;
mod fm;
mod random;

pub use enumerate::{enumerate_vertices, EnumerateError, EnumerateOptions};
pub use random::{
    random_polytope_hrep, sample_generator_config, GeneratorConfig, SparsityConstraint,
};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::Mat;
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("vertex matrix is {rows}x{cols}, expected {dim} rows and at least one column")]
    VertexShape { dim: usize, rows: usize, cols: usize },
    #[error("A is {rows} rows of width {cols}, b has length {b_len}, dim is {dim}")]
    HrepShape {
        dim: usize,
        rows: usize,
        cols: usize,
        b_len: usize,
    },
    #[error("row {row} of A is identically zero")]
    ZeroRow { row: usize },
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("bad rational literal {literal:?}: {source}")]
    Rational {
        literal: String,
        source: crate::rational::ParseRationalError,
    },
    #[error("row {index} has {len} entries, expected {dim}")]
    RaggedRow { index: usize, len: usize, dim: usize },
    #[error("document has neither a \"vertices\" nor an \"A\" field")]
    UnknownKind,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// Convex polytope in V-representation: columns of `vertex_matrix` are
/// the vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertex_matrix: Mat,
    label: Option<String>,
}

impl Polytope {
    pub fn new(dim: usize, vertex_matrix: Mat, label: Option<String>) -> Result<Self, PolytopeError> {
        if vertex_matrix.rows() != dim || vertex_matrix.cols() == 0 || dim == 0 {
            return Err(PolytopeError::VertexShape {
                dim,
                rows: vertex_matrix.rows(),
                cols: vertex_matrix.cols(),
            });
        }
        Ok(Polytope {
            dim,
            vertex_matrix,
            label,
        })
    }

    /// Builds from a list of vertices (each of length `dim`), which become
    /// the matrix columns in the given order.
    pub fn from_vertices(
        dim: usize,
        vertices: &[Vec<Rational>],
        label: Option<String>,
    ) -> Result<Self, PolytopeError> {
        if vertices.is_empty() || vertices.iter().any(|v| v.len() != dim) {
            return Err(PolytopeError::VertexShape {
                dim,
                rows: dim,
                cols: vertices.len(),
            });
        }
        let m = vertices.len();
        let mat = Mat::from_fn(dim, m, |i, j| vertices[j][i].clone());
        Polytope::new(dim, mat, label)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_matrix.cols()
    }

    pub fn vertex_matrix(&self) -> &Mat {
        &self.vertex_matrix
    }

    pub fn vertex(&self, j: usize) -> Vec<Rational> {
        self.vertex_matrix.col(j)
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn from_json_str(text: &str) -> Result<Self, JsonError> {
        let doc: PolytopeDoc = serde_json::from_str(text)?;
        doc.into_polytope()
    }

    pub fn to_json_string(&self) -> String {
        let doc = PolytopeDoc::from_polytope(self, None);
        let mut out = serde_json::to_string_pretty(&doc).expect("serialization cannot fail");
        out.push('\n');
        out
    }

    /// JSON with the generator config attached, as written by dataset
    /// generation.
    pub fn to_json_string_with_config(&self, config: &GeneratorConfig) -> String {
        let doc = PolytopeDoc::from_polytope(self, Some(config.clone()));
        let mut out = serde_json::to_string_pretty(&doc).expect("serialization cannot fail");
        out.push('\n');
        out
    }
}

/// Polyhedron `{x | Ax ≤ b}` in H-representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRepresentation {
    dim: usize,
    a_matrix: Mat,
    b_vector: Vec<Rational>,
}

impl HRepresentation {
    pub fn new(dim: usize, a_matrix: Mat, b_vector: Vec<Rational>) -> Result<Self, PolytopeError> {
        if a_matrix.cols() != dim || a_matrix.rows() != b_vector.len() || dim == 0 {
            return Err(PolytopeError::HrepShape {
                dim,
                rows: a_matrix.rows(),
                cols: a_matrix.cols(),
                b_len: b_vector.len(),
            });
        }
        for i in 0..a_matrix.rows() {
            if a_matrix.row(i).iter().all(Zero::is_zero) {
                return Err(PolytopeError::ZeroRow { row: i });
            }
        }
        Ok(HRepresentation {
            dim,
            a_matrix,
            b_vector,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_rows(&self) -> usize {
        self.a_matrix.rows()
    }

    pub fn a_matrix(&self) -> &Mat {
        &self.a_matrix
    }

    pub fn b_vector(&self) -> &[Rational] {
        &self.b_vector
    }

    pub fn from_json_str(text: &str) -> Result<Self, JsonError> {
        let doc: HrepDoc = serde_json::from_str(text)?;
        doc.into_hrep()
    }

    pub fn to_json_string(&self) -> String {
        let doc = HrepDoc::from_hrep(self);
        let mut out = serde_json::to_string_pretty(&doc).expect("serialization cannot fail");
        out.push('\n');
        out
    }
}

/// True iff the recession cone `{d | Ad ≤ 0}` is trivial, i.e. the
/// polyhedron is bounded. Decided by exact Fourier–Motzkin feasibility
/// of `{Ad ≤ 0, d_i = ±1}` for every coordinate and sign.
pub fn check_bounded(h: &HRepresentation) -> bool {
    let n = h.dim;
    let a = &h.a_matrix;
    for var in 0..n {
        for sign in [1i64, -1] {
            // Substitute d_var = sign into Ad ≤ 0 and test feasibility of
            // the remaining system.
            let mut sys = fm::LinSystem::new(n - 1);
            for r in 0..a.rows() {
                let coeffs: Vec<Rational> = (0..n)
                    .filter(|&k| k != var)
                    .map(|k| a.at(r, k).clone())
                    .collect();
                let rhs = -(a.at(r, var) * Rational::from_integer(sign.into()));
                sys.add_le(coeffs, rhs);
            }
            if sys.feasible() {
                return false; // found a recession direction
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    /// rank(V) < n
    RankDeficient { rank: usize, dim: usize },
    /// fewer vertices than dimensions (m < n)
    TooFewVertices { vertices: usize, dim: usize },
    /// two exactly equal columns
    DuplicateVertex { first: usize, second: usize },
    /// column is a convex combination of the others (strict mode only)
    NotExtreme { index: usize },
}

impl std::fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationIssue::RankDeficient { rank, dim } => {
                write!(f, "vertex matrix has rank {rank} < dim {dim}")
            }
            ValidationIssue::TooFewVertices { vertices, dim } => {
                write!(f, "only {vertices} vertices in dimension {dim}")
            }
            ValidationIssue::DuplicateVertex { first, second } => {
                write!(f, "vertices {first} and {second} coincide")
            }
            ValidationIssue::NotExtreme { index } => {
                write!(f, "vertex {index} is a convex combination of the others")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationResult {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationResult {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl std::fmt::Display for ValidationResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "ok");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

/// Checks the standing assumptions: full row rank, n ≤ m, pairwise
/// distinct vertices. Strict mode additionally certifies every column is
/// an extreme point (exact convex-combination feasibility — affordable
/// only at small vertex counts).
pub fn validate_polytope(p: &Polytope, strict: bool) -> ValidationResult {
    let mut issues = Vec::new();
    let v = &p.vertex_matrix;
    let (n, m) = (p.dim, p.vertex_count());
    if m < n {
        issues.push(ValidationIssue::TooFewVertices { vertices: m, dim: n });
    }
    let rank = v.rank();
    if rank < n {
        issues.push(ValidationIssue::RankDeficient { rank, dim: n });
    }
    for i in 0..m {
        for j in i + 1..m {
            if (0..n).all(|r| v.at(r, i) == v.at(r, j)) {
                issues.push(ValidationIssue::DuplicateVertex { first: i, second: j });
            }
        }
    }
    if strict && issues.is_empty() {
        for j in 0..m {
            if !is_extreme(v, j) {
                issues.push(ValidationIssue::NotExtreme { index: j });
            }
        }
    }
    ValidationResult { issues }
}

/// Column `j` is extreme iff no convex combination of the other columns
/// reproduces it.
fn is_extreme(v: &Mat, j: usize) -> bool {
    let (n, m) = (v.rows(), v.cols());
    if m == 1 {
        return true;
    }
    let others: Vec<usize> = (0..m).filter(|&k| k != j).collect();
    let mut sys = fm::LinSystem::new(others.len());
    for r in 0..n {
        let coeffs: Vec<Rational> = others.iter().map(|&k| v.at(r, k).clone()).collect();
        sys.add_eq(coeffs, v.at(r, j).clone());
    }
    sys.add_eq(vec![Rational::one(); others.len()], Rational::one());
    for i in 0..others.len() {
        let mut coeffs = vec![Rational::zero(); others.len()];
        coeffs[i] = -Rational::one();
        sys.add_le(coeffs, Rational::zero());
    }
    !sys.feasible()
}

/// Input document accepted by the CLI: either representation,
/// distinguished by its fields.
pub enum InputDoc {
    Polytope(Polytope),
    HRep(HRepresentation),
}

pub fn parse_input_json(text: &str) -> Result<InputDoc, JsonError> {
    let probe: serde_json::Value = serde_json::from_str(text)?;
    if probe.get("vertices").is_some() {
        Ok(InputDoc::Polytope(Polytope::from_json_str(text)?))
    } else if probe.get("A").is_some() {
        Ok(InputDoc::HRep(HRepresentation::from_json_str(text)?))
    } else {
        Err(JsonError::UnknownKind)
    }
}

// ---- JSON document shapes ----
// Rational entries are written as canonical strings ("p" or "p/q");
// plain JSON integers are accepted on input for hand-written files.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NumOrStr {
    Num(i64),
    Str(String),
}

fn rational_from_doc(v: &NumOrStr) -> Result<Rational, JsonError> {
    match v {
        NumOrStr::Num(i) => Ok(Rational::from_integer((*i).into())),
        NumOrStr::Str(s) => parse_rational(s).map_err(|source| JsonError::Rational {
            literal: s.clone(),
            source,
        }),
    }
}

#[derive(Serialize, Deserialize)]
struct PolytopeDoc {
    dim: usize,
    vertices: Vec<Vec<NumOrStr>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    generator: Option<GeneratorConfig>,
}

impl PolytopeDoc {
    fn from_polytope(p: &Polytope, generator: Option<GeneratorConfig>) -> Self {
        let vertices = (0..p.vertex_count())
            .map(|j| {
                (0..p.dim)
                    .map(|i| NumOrStr::Str(format_rational(p.vertex_matrix.at(i, j))))
                    .collect()
            })
            .collect();
        PolytopeDoc {
            dim: p.dim,
            vertices,
            label: p.label.clone(),
            generator,
        }
    }

    fn into_polytope(self) -> Result<Polytope, JsonError> {
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (index, row) in self.vertices.iter().enumerate() {
            if row.len() != self.dim {
                return Err(JsonError::RaggedRow {
                    index,
                    len: row.len(),
                    dim: self.dim,
                });
            }
            let coords: Vec<Rational> =
                row.iter().map(rational_from_doc).collect::<Result<_, _>>()?;
            vertices.push(coords);
        }
        Ok(Polytope::from_vertices(self.dim, &vertices, self.label)?)
    }
}

#[derive(Serialize, Deserialize)]
struct HrepDoc {
    dim: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<NumOrStr>>,
    b: Vec<NumOrStr>,
}

impl HrepDoc {
    fn from_hrep(h: &HRepresentation) -> Self {
        let a = (0..h.a_matrix.rows())
            .map(|i| {
                h.a_matrix
                    .row(i)
                    .iter()
                    .map(|v| NumOrStr::Str(format_rational(v)))
                    .collect()
            })
            .collect();
        let b = h
            .b_vector
            .iter()
            .map(|v| NumOrStr::Str(format_rational(v)))
            .collect();
        HrepDoc { dim: h.dim, a, b }
    }

    fn into_hrep(self) -> Result<HRepresentation, JsonError> {
        let rows = self.a.len();
        let mut data = Vec::with_capacity(rows * self.dim);
        for (index, row) in self.a.iter().enumerate() {
            if row.len() != self.dim {
                return Err(JsonError::RaggedRow {
                    index,
                    len: row.len(),
                    dim: self.dim,
                });
            }
            for v in row {
                data.push(rational_from_doc(v)?);
            }
        }
        let b: Vec<Rational> = self.b.iter().map(rational_from_doc).collect::<Result<_, _>>()?;
        let a = Mat::new(rows, self.dim, data).expect("row widths checked above");
        Ok(HRepresentation::new(self.dim, a, b)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    pub(crate) fn cross_polytope_3d() -> Polytope {
        // V = [I −I], the ℓ₁ ball's vertex matrix
        let v = Mat::from_int_rows(&[
            &[1, 0, 0, -1, 0, 0],
            &[0, 1, 0, 0, -1, 0],
            &[0, 0, 1, 0, 0, -1],
        ]);
        Polytope::new(3, v, Some("l1-ball".into())).unwrap()
    }

    #[test]
    fn validate_cross_polytope() {
        let p = cross_polytope_3d();
        assert!(validate_polytope(&p, true).is_valid());
    }

    #[test]
    fn validate_flags_duplicates() {
        let v = Mat::from_int_rows(&[&[1, 0, 1], &[0, 1, 0]]);
        let p = Polytope::new(2, v, None).unwrap();
        let result = validate_polytope(&p, false);
        assert_eq!(
            result.issues,
            vec![ValidationIssue::DuplicateVertex { first: 0, second: 2 }]
        );
    }

    #[test]
    fn validate_flags_rank_deficiency() {
        let v = Mat::from_int_rows(&[&[1, -1, 2], &[1, -1, 2]]);
        let p = Polytope::new(2, v, None).unwrap();
        let result = validate_polytope(&p, false);
        assert!(result
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::RankDeficient { rank: 1, dim: 2 })));
    }

    #[test]
    fn strict_mode_flags_midpoint() {
        let mut v = Mat::zeros(2, 3);
        v.set(0, 0, rat(1));
        v.set(1, 1, rat(1));
        v.set(0, 2, ratio(1, 2));
        v.set(1, 2, ratio(1, 2));
        let p = Polytope::new(2, v, None).unwrap();
        let result = validate_polytope(&p, true);
        assert_eq!(result.issues, vec![ValidationIssue::NotExtreme { index: 2 }]);
        // non-strict accepts it
        assert!(validate_polytope(&p, false).is_valid());
    }

    #[test]
    fn bounded_box_unbounded_halfspace() {
        let a = Mat::from_int_rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let b = vec![rat(1); 4];
        let box2 = HRepresentation::new(2, a, b).unwrap();
        assert!(check_bounded(&box2));

        let a = Mat::from_int_rows(&[&[1, 0]]);
        let half = HRepresentation::new(2, a, vec![rat(0)]).unwrap();
        assert!(!check_bounded(&half));
    }

    #[test]
    fn bounded_l1_ball() {
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for mask in 0..8u32 {
            rows.push(
                (0..3)
                    .map(|k| if mask >> k & 1 == 1 { -1 } else { 1 })
                    .collect(),
            );
        }
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let a = Mat::from_int_rows(&refs);
        let h = HRepresentation::new(3, a, vec![rat(1); 8]).unwrap();
        assert!(check_bounded(&h));
    }

    #[test]
    fn polytope_json_roundtrip() {
        let p = cross_polytope_3d();
        let text = p.to_json_string();
        let back = Polytope::from_json_str(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.label(), Some("l1-ball"));
    }

    #[test]
    fn polytope_json_accepts_integers_and_decimals() {
        let text = r#"{"dim": 2, "vertices": [[1, 0], ["0.5", "-1/3"]]}"#;
        let p = Polytope::from_json_str(text).unwrap();
        assert_eq!(p.vertex(1), vec![ratio(1, 2), ratio(-1, 3)]);
    }

    #[test]
    fn hrep_json_roundtrip() {
        let a = Mat::from_int_rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let h = HRepresentation::new(2, a, vec![rat(1); 4]).unwrap();
        let text = h.to_json_string();
        assert_eq!(HRepresentation::from_json_str(&text).unwrap(), h);
    }

    #[test]
    fn input_detection() {
        assert!(matches!(
            parse_input_json(r#"{"dim":1,"vertices":[["1"],["-1"]]}"#).unwrap(),
            InputDoc::Polytope(_)
        ));
        assert!(matches!(
            parse_input_json(r#"{"dim":1,"A":[["1"],["-1"]],"b":["1","1"]}"#).unwrap(),
            InputDoc::HRep(_)
        ));
        assert!(parse_input_json(r#"{"dim":1}"#).is_err());
    }

    #[test]
    fn rejects_zero_rows() {
        let a = Mat::from_int_rows(&[&[1, 0], &[0, 0]]);
        assert_eq!(
            HRepresentation::new(2, a, vec![rat(1), rat(1)]).unwrap_err(),
            PolytopeError::ZeroRow { row: 1 }
        );
    }
}
