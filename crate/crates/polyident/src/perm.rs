//! Permutations of `{0..m-1}` and their matrix form.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::Mat;
use crate::rational::Rational;

/// A bijection on `{0..m-1}`, stored as its image array: `image[j]` is
/// where point `j` goes. The matrix form puts a 1 at row `image[j]`,
/// column `j`, so right-multiplying a vertex matrix by it permutes
/// columns: `(V·Π).col(j) = V.col(image[j])`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("image of length {len} is not a bijection on 0..{len}")]
    NotBijection { len: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            image: (0..m).collect(),
        }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self, PermutationError> {
        let len = image.len();
        let mut seen = vec![false; len];
        for &v in &image {
            if v >= len || seen[v] {
                return Err(PermutationError::NotBijection { len });
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    /// Transposition swapping `a` and `b` in a permutation of degree `m`.
    pub fn transposition(m: usize, a: usize, b: usize) -> Self {
        let mut image: Vec<usize> = (0..m).collect();
        image.swap(a, b);
        Permutation { image }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.image[point]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Function composition `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            image: other.image.iter().map(|&v| self.image[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }

    /// Smallest moved point, or `None` for the identity.
    pub fn min_moved_point(&self) -> Option<usize> {
        self.image.iter().enumerate().find(|(i, &v)| *i != v).map(|(i, _)| i)
    }

    /// The m×m permutation matrix with `Π[image[j]][j] = 1`.
    pub fn to_matrix(&self) -> Mat {
        let m = self.degree();
        let mut out = Mat::zeros(m, m);
        for (j, &i) in self.image.iter().enumerate() {
            out.set(i, j, Rational::one());
        }
        out
    }

    /// Reads a permutation back out of a matrix produced by [`Self::to_matrix`].
    pub fn from_matrix(mat: &Mat) -> Result<Self, PermutationError> {
        let m = mat.rows();
        if mat.cols() != m {
            return Err(PermutationError::DegreeMismatch(m, mat.cols()));
        }
        let mut image = Vec::with_capacity(m);
        for j in 0..m {
            let mut hit = None;
            for i in 0..m {
                let v = mat.at(i, j);
                if v.is_zero() {
                    continue;
                }
                if !v.is_one() || hit.is_some() {
                    return Err(PermutationError::NotBijection { len: m });
                }
                hit = Some(i);
            }
            match hit {
                Some(i) => image.push(i),
                None => return Err(PermutationError::NotBijection { len: m }),
            }
        }
        Permutation::from_image(image)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({:?})", self.image)
    }
}

/// Calls `f` with every permutation of the given degree, in lexicographic
/// order of the image array. Factorially many calls — keep the degree
/// small.
pub fn for_each_permutation(degree: usize, mut f: impl FnMut(&Permutation)) {
    let mut image: Vec<usize> = (0..degree).collect();
    loop {
        f(&Permutation {
            image: image.clone(),
        });
        if !next_lex(&mut image) {
            return;
        }
    }
}

/// Advances to the lexicographic successor; false once wrapped.
fn next_lex(arr: &mut [usize]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections()  {
        assert!(Permutation::from_image(vec![0, 0]).is_err());
        assert!(Permutation::from_image(vec![0, 2]).is_err());
        assert!(Permutation::from_image(vec![1, 2, 0]).is_ok());
    }

    #[test]
    fn compose_applies_right_then_left() {
        // cycle (ctx: images) a = [1,2,0], b = (0 1) = [1,0,2]
        let a = Permutation::from_image(vec![1, 2, 0]).unwrap();
        let b = Permutation::from_image(vec![1, 0, 2]).unwrap();
        let ab = a.compose(&b);
        // (a∘b)(0) = a(b(0)) = a(1) = 2
        assert_eq!(ab.apply(0), 2);
        assert_eq!(ab.apply(1), 1);
        assert_eq!(ab.apply(2), 0);
    }

    #[test]
    fn inverse_roundtrip() {
        let p = Permutation::from_image(vec![3, 0, 2, 1]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn iterates_all_permutations_in_lex_order() {
        let mut seen = Vec::new();
        for_each_permutation(3, |p| seen.push(p.image().to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0],
            ]
        );
        let mut count = 0;
        for_each_permutation(5, |_| count += 1);
        assert_eq!(count, 120);
        count = 0;
        for_each_permutation(0, |p| {
            assert!(p.is_identity());
            count += 1;
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn matrix_form_permutes_columns() {
        let p = Permutation::from_image(vec![1, 2, 0]).unwrap();
        let m = p.to_matrix();
        // column j has its 1 in row image[j]
        assert_eq!(*m.at(1, 0), Rational::one());
        assert_eq!(*m.at(2, 1), Rational::one());
        assert_eq!(*m.at(0, 2), Rational::one());
        assert_eq!(Permutation::from_matrix(&m).unwrap(), p);
    }
}
