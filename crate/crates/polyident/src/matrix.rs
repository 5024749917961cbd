//! Dense exact-rational matrices.
//!
//! Row-major storage of [`Rational`] entries. All eliminations are exact:
//! inversion is Gauss–Jordan with the first nonzero entry of each column
//! as pivot (exact arithmetic needs no pivoting for stability, and a
//! fixed rule keeps results reproducible); determinant and rank clear
//! denominators row-wise and run fraction-free Bareiss elimination over
//! the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::perm::Permutation;
use crate::rational::{is_pm_one, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left_rows}x{left_cols} * {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("matrix is not a signed permutation")]
    NotSignedPermutation,
    #[error("entry count {len} does not match shape {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, len: usize },
}

/// Dense rows×cols matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::BadShape {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Convenience constructor from integer literals, mostly for tests
    /// and fixtures.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| Rational::from_integer(BigInt::from(v))))
            .collect();
        Mat { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn scale(&self, factor: &Rational) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    /// Exact matrix product.
    pub fn mul(&self, other: &Mat) -> Result<Mat, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    /// Reorders columns: column `j` of the result is column `perm.apply(j)`
    /// of `self`, i.e. the product `self · Π`.
    pub fn permute_cols(&self, perm: &Permutation) -> Mat {
        debug_assert_eq!(perm.degree(), self.cols);
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, perm.apply(j)).clone())
    }

    /// Exact inverse by Gauss–Jordan elimination, first nonzero pivot per
    /// column.
    pub fn invert(&self) -> Result<Mat, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !work.at(r, col).is_zero())
                .ok_or(LinalgError::Singular)?;
            if pivot_row != col {
                work.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
            }
            let pivot = work.at(col, col).clone();
            let pivot_inv = Rational::one() / pivot;
            work.scale_row(col, &pivot_inv);
            inv.scale_row(col, &pivot_inv);
            for r in 0..n {
                if r == col || work.at(r, col).is_zero() {
                    continue;
                }
                let factor = work.at(r, col).clone();
                work.sub_scaled_row(r, col, &factor);
                inv.sub_scaled_row(r, col, &factor);
            }
        }
        Ok(inv)
    }

    /// Exact rank via fraction-free elimination on the denominator-cleared
    /// integer matrix.
    pub fn rank(&self) -> usize {
        let mut work = self.to_cleared_integers();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev_pivot = BigInt::one();
        for col in 0..cols {
            let Some(pivot_row) = (rank..rows).find(|&r| !work[r * cols + col].is_zero()) else {
                continue;
            };
            if pivot_row != rank {
                for j in 0..cols {
                    work.swap(pivot_row * cols + j, rank * cols + j);
                }
            }
            // Bareiss step: entries stay integral, divisions are exact.
            let pivot = work[rank * cols + col].clone();
            for r in rank + 1..rows {
                let lead = work[r * cols + col].clone();
                for j in 0..cols {
                    let value = (&pivot * &work[r * cols + j] - &lead * &work[rank * cols + j])
                        / &prev_pivot;
                    work[r * cols + j] = value;
                }
            }
            prev_pivot = pivot;
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Right pseudoinverse `Vᵀ(VVᵀ)⁻¹` for a full-row-rank matrix; the
    /// result satisfies `V · V† = I`.
    pub fn right_pseudoinverse(&self) -> Result<Mat, LinalgError> {
        let q = self.mul(&self.transpose()).expect("V·Vᵀ shapes agree");
        let q_inv = q.invert().map_err(|e| match e {
            LinalgError::Singular => LinalgError::RankDeficient,
            other => other,
        })?;
        self.transpose().mul(&q_inv)
    }

    /// Exact determinant via fraction-free Bareiss elimination on the
    /// denominator-cleared integer matrix.
    pub fn determinant(&self) -> Result<Rational, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }

        // Clear denominators row-wise; divide the integer determinant by
        // the product of the row factors at the end.
        let mut scale = BigInt::one();
        let mut work: Vec<BigInt> = Vec::with_capacity(n * n);
        for i in 0..n {
            let lcm = self
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            for v in self.row(i) {
                work.push(v.numer() * (&lcm / v.denom()));
            }
            scale *= lcm;
        }

        let mut sign = 1i64;
        let mut prev_pivot = BigInt::one();
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&r| !work[r * n + col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if pivot_row != col {
                for j in 0..n {
                    work.swap(pivot_row * n + j, col * n + j);
                }
                sign = -sign;
            }
            let pivot = work[col * n + col].clone();
            for r in col + 1..n {
                let lead = work[r * n + col].clone();
                for j in col..n {
                    let value =
                        (&pivot * &work[r * n + j] - &lead * &work[col * n + j]) / &prev_pivot;
                    work[r * n + j] = value;
                }
            }
            prev_pivot = pivot;
        }
        // After Bareiss the last pivot is the determinant of the integer matrix.
        let det_int = work[n * n - 1].clone() * BigInt::from(sign);
        Ok(Rational::new(det_int, scale))
    }

    /// True iff every row and every column holds exactly one nonzero entry
    /// and that entry is `+1` or `-1`.
    pub fn is_signed_permutation(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let mut col_seen = vec![false; n];
        for i in 0..n {
            let mut row_hits = 0;
            for j in 0..n {
                let v = self.at(i, j);
                if v.is_zero() {
                    continue;
                }
                if !is_pm_one(v) {
                    return false;
                }
                row_hits += 1;
                if row_hits > 1 || col_seen[j] {
                    return false;
                }
                col_seen[j] = true;
            }
            if row_hits != 1 {
                return false;
            }
        }
        true
    }

    /// Splits a signed permutation matrix `G` into `D·Π̄`: per-row signs
    /// and the underlying permutation. Multiplying the parts back
    /// reconstructs `G` exactly.
    pub fn decompose_signed_permutation(&self) -> Result<(Vec<i8>, Permutation), LinalgError> {
        if !self.is_signed_permutation() {
            return Err(LinalgError::NotSignedPermutation);
        }
        let n = self.rows;
        let mut signs = vec![0i8; n];
        let mut image = vec![0usize; n];
        for j in 0..n {
            for i in 0..n {
                let v = self.at(i, j);
                if !v.is_zero() {
                    image[j] = i;
                    signs[i] = if v.is_positive() { 1 } else { -1 };
                }
            }
        }
        let perm = Permutation::from_image(image).expect("signed permutation columns are a bijection");
        Ok((signs, perm))
    }

    /// Rebuilds `D·Π̄` from the parts produced by
    /// [`Self::decompose_signed_permutation`].
    pub fn from_signed_permutation(signs: &[i8], perm: &Permutation) -> Mat {
        let n = signs.len();
        debug_assert_eq!(perm.degree(), n);
        let mut out = Mat::zeros(n, n);
        for j in 0..n {
            let i = perm.apply(j);
            out.set(i, j, Rational::from_integer(BigInt::from(signs[i])));
        }
        out
    }

    /// Row-wise denominator clearing; scaling rows does not change rank.
    fn to_cleared_integers(&self) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            let lcm = self
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            for v in self.row(i) {
                out.push(v.numer() * (&lcm / v.denom()));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, factor: &Rational) {
        for j in 0..self.cols {
            let v = self.at(i, j) * factor;
            self.set(i, j, v);
        }
    }

    /// row[i] -= factor * row[pivot]
    fn sub_scaled_row(&mut self, i: usize, pivot: usize, factor: &Rational) {
        for j in 0..self.cols {
            let v = self.at(i, j) - factor * self.at(pivot, j);
            self.set(i, j, v);
        }
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(crate::rational::format_rational)
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn mul_identity_and_zero() {
        let i3 = Mat::identity(3);
        assert_eq!(i3.mul(&i3).unwrap(), i3);
        let a = Mat::from_int_rows(&[&[1, 2], &[3, 4]]);
        let z = Mat::zeros(2, 2);
        assert_eq!(a.mul(&z).unwrap(), z);
    }

    #[test]
    fn mul_triangle_gram() {
        // V·Vᵀ for the triangle vertex matrix
        let v = Mat::from_int_rows(&[&[1, 0, -1], &[0, 1, -1]]);
        let q = v.mul(&v.transpose()).unwrap();
        assert_eq!(q, Mat::from_int_rows(&[&[2, 1], &[1, 2]]));
    }

    #[test]
    fn mul_dimension_mismatch() {
        let a = Mat::zeros(2, 3);
        let b = Mat::zeros(2, 3);
        assert!(matches!(
            a.mul(&b),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn invert_scaled_identity() {
        let two_i = Mat::identity(3).scale(&rat(2));
        let inv = two_i.invert().unwrap();
        assert_eq!(inv, Mat::identity(3).scale(&ratio(1, 2)));
    }

    #[test]
    fn invert_gram_matrix() {
        let q = Mat::from_int_rows(&[&[2, 1], &[1, 2]]);
        let inv = q.invert().unwrap();
        let expected = Mat::from_int_rows(&[&[2, -1], &[-1, 2]]).scale(&ratio(1, 3));
        assert_eq!(inv, expected);
        assert_eq!(q.mul(&inv).unwrap(), Mat::identity(2));
    }

    #[test]
    fn invert_singular() {
        let a = Mat::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(a.invert(), Err(LinalgError::Singular));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Mat::identity(4).rank(), 4);
        let v = Mat::from_int_rows(&[
            &[1, 0, 0, -1, 0, 0],
            &[0, 1, 0, 0, -1, 0],
            &[0, 0, 1, 0, 0, -1],
        ]);
        assert_eq!(v.rank(), 3);
        assert_eq!(Mat::zeros(2, 5).rank(), 0);
    }

    #[test]
    fn rank_with_rational_entries() {
        let a = Mat::from_fn(2, 2, |i, j| if i == j { ratio(1, 3) } else { ratio(2, 3) });
        assert_eq!(a.rank(), 2);
        let b = Mat::from_fn(2, 2, |_, _| ratio(5, 7));
        assert_eq!(b.rank(), 1);
    }

    #[test]
    fn pseudoinverse_identity() {
        let i3 = Mat::identity(3);
        assert_eq!(i3.right_pseudoinverse().unwrap(), i3);
    }

    #[test]
    fn pseudoinverse_cross_polytope() {
        // V = [I -I] has Q = 2I, so V† = (1/2)·[I; -I]
        let v = Mat::from_int_rows(&[
            &[1, 0, 0, -1, 0, 0],
            &[0, 1, 0, 0, -1, 0],
            &[0, 0, 1, 0, 0, -1],
        ]);
        let pinv = v.right_pseudoinverse().unwrap();
        let expected = Mat::from_int_rows(&[
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[-1, 0, 0],
            &[0, -1, 0],
            &[0, 0, -1],
        ])
        .scale(&ratio(1, 2));
        assert_eq!(pinv, expected);
        assert_eq!(v.mul(&pinv).unwrap(), Mat::identity(3));
    }

    #[test]
    fn pseudoinverse_rank_deficient() {
        assert_eq!(
            Mat::zeros(2, 5).right_pseudoinverse(),
            Err(LinalgError::RankDeficient)
        );
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(Mat::identity(5).determinant().unwrap(), rat(1));
        let rot = Mat::from_int_rows(&[&[0, -1], &[1, -1]]);
        assert_eq!(rot.determinant().unwrap(), rat(1));
        let swap = Mat::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.determinant().unwrap(), rat(-1));
        assert!(matches!(
            Mat::zeros(2, 3).determinant(),
            Err(LinalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn determinant_rational_entries() {
        let a = Mat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => ratio(1, 2),
            (0, 1) => ratio(1, 3),
            (1, 0) => ratio(1, 4),
            (1, 1) => ratio(1, 5),
        _ => unreachable!(),
        });
        // 1/10 - 1/12 = 1/60
        assert_eq!(a.determinant().unwrap(), ratio(1, 60));
    }

    #[test]
    fn signed_permutation_detection() {
        assert!(Mat::identity(3).is_signed_permutation());
        assert!(Mat::from_int_rows(&[&[0, -1], &[1, 0]]).is_signed_permutation());
        // triangle rotation: second row has two nonzeros
        assert!(!Mat::from_int_rows(&[&[0, -1], &[1, -1]]).is_signed_permutation());
        assert!(!Mat::from_int_rows(&[&[2, 0], &[0, 1]]).is_signed_permutation());
        assert!(!Mat::zeros(2, 3).is_signed_permutation());
    }

    #[test]
    fn decompose_signed_permutation_examples() {
        let (signs, perm) = Mat::identity(2).decompose_signed_permutation().unwrap();
        assert_eq!(signs, vec![1, 1]);
        assert!(perm.is_identity());

        let g = Mat::from_int_rows(&[&[0, -1], &[1, 0]]);
        let (signs, perm) = g.decompose_signed_permutation().unwrap();
        assert_eq!(signs, vec![-1, 1]);
        assert_eq!(perm.image(), &[1, 0]);
        assert_eq!(Mat::from_signed_permutation(&signs, &perm), g);

        assert_eq!(
            Mat::from_int_rows(&[&[1, 1], &[0, 1]]).decompose_signed_permutation(),
            Err(LinalgError::NotSignedPermutation)
        );
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
    }

    fn arb_mat(n: usize) -> impl Strategy<Value = Mat> {
        proptest::collection::vec(arb_rational(), n * n)
            .prop_map(move |data| Mat::new(n, n, data).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn inverse_times_self_is_identity(a in arb_mat(3)) {
            prop_assume!(!a.determinant().unwrap().is_zero());
            let inv = a.invert().unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), Mat::identity(3));
            prop_assert_eq!(inv.mul(&a).unwrap(), Mat::identity(3));
        }

        #[test]
        fn determinant_is_multiplicative(a in arb_mat(4), b in arb_mat(4)) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(
                ab.determinant().unwrap(),
                a.determinant().unwrap() * b.determinant().unwrap()
            );
        }

        #[test]
        fn pseudoinverse_properties(data in proptest::collection::vec(arb_rational(), 2 * 4)) {
            let v = Mat::new(2, 4, data).unwrap();
            prop_assume!(v.rank() == 2);
            let pinv = v.right_pseudoinverse().unwrap();
            prop_assert_eq!(v.mul(&pinv).unwrap(), Mat::identity(2));
            // V†·V is a symmetric idempotent projector
            let p = pinv.mul(&v).unwrap();
            prop_assert_eq!(p.clone(), p.transpose());
            prop_assert_eq!(p.mul(&p).unwrap(), p.clone());
            // V·V†·V = V
            prop_assert_eq!(v.mul(&p).unwrap(), v);
        }

        #[test]
        fn signed_permutation_decompose_roundtrip(
            image in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(),
            signs in proptest::collection::vec(proptest::bool::ANY, 5),
        ) {
            let perm = Permutation::from_image(image).unwrap();
            let signs: Vec<i8> = signs.into_iter().map(|b| if b { 1 } else { -1 }).collect();
            let g = Mat::from_signed_permutation(&signs, &perm);
            prop_assert!(g.is_signed_permutation());
            let (s2, p2) = g.decompose_signed_permutation().unwrap();
            prop_assert_eq!(Mat::from_signed_permutation(&s2, &p2), g);
        }
    }
}
