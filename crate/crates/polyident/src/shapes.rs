//! Stock polytopes used throughout the documentation and tests.

use crate::matrix::Mat;
use crate::polytope::{HRepresentation, Polytope};
use crate::rational::{rat, Rational};
use num_traits::One;

/// The cube [−1,1]^n as vertices, 2^n columns in lexicographic order.
pub fn cube(n: usize) -> Polytope {
    assert!(n >= 1 && n <= 20);
    let m = 1usize << n;
    let v = Mat::from_fn(n, m, |i, j| {
        // treat coordinate 0 as the most significant bit so columns
        // ascend lexicographically
        if j >> (n - 1 - i) & 1 == 0 {
            rat(-1)
        } else {
            rat(1)
        }
    });
    Polytope::new(n, v, Some(format!("cube-{n}d"))).unwrap()
}

/// The cube [−1,1]^n as 2n inequalities ±x_i ≤ 1.
pub fn cube_hrep(n: usize) -> HRepresentation {
    let a = Mat::from_fn(2 * n, n, |r, c| {
        if r / 2 == c {
            if r % 2 == 0 {
                rat(1)
            } else {
                rat(-1)
            }
        } else {
            rat(0)
        }
    });
    HRepresentation::new(n, a, vec![Rational::one(); 2 * n]).unwrap()
}

/// The cross-polytope (ℓ₁ ball) in ℝⁿ with vertex matrix [I −I]:
/// columns e₁,…,e_n,−e₁,…,−e_n in that order.
pub fn cross_polytope(n: usize) -> Polytope {
    assert!(n >= 1);
    let v = Mat::from_fn(n, 2 * n, |i, j| {
        if j == i {
            rat(1)
        } else if j == i + n {
            rat(-1)
        } else {
            rat(0)
        }
    });
    Polytope::new(n, v, Some(format!("l1-ball-{n}d"))).unwrap()
}

/// The ℓ₁ ball ‖x‖₁ ≤ 1 as its 2^n sign-pattern inequalities.
pub fn l1_ball_hrep(n: usize) -> HRepresentation {
    assert!(n >= 1 && n <= 20);
    let a = Mat::from_fn(1 << n, n, |mask, k| {
        if mask >> k & 1 == 1 {
            rat(-1)
        } else {
            rat(1)
        }
    });
    HRepresentation::new(n, a, vec![Rational::one(); 1 << n]).unwrap()
}

/// The triangle conv{(1,0), (0,1), (−1,−1)}: the smallest standard
/// example of a NON-identifiable polytope (it has a 120° rotational
/// symmetry that is linear but not a signed permutation).
pub fn triangle() -> Polytope {
    let v = Mat::from_int_rows(&[&[1, 0, -1], &[0, 1, -1]]);
    Polytope::new(2, v, Some("triangle".into())).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{enumerate_vertices, validate_polytope, EnumerateOptions};

    #[test]
    fn shapes_validate() {
        for n in 1..=4 {
            assert!(validate_polytope(&cube(n), n <= 3).is_valid());
            assert!(validate_polytope(&cross_polytope(n), true).is_valid());
        }
        assert!(validate_polytope(&triangle(), true).is_valid());
    }

    #[test]
    fn hreps_match_vertex_forms() {
        for n in 1..=3 {
            let from_h = enumerate_vertices(&cube_hrep(n), &EnumerateOptions::default()).unwrap();
            assert_eq!(from_h.vertex_count(), cube(n).vertex_count());
            let from_h =
                enumerate_vertices(&l1_ball_hrep(n), &EnumerateOptions::default()).unwrap();
            assert_eq!(from_h.vertex_count(), cross_polytope(n).vertex_count());
        }
        // cube() is already in the lexicographic order the enumerator uses
        let enumerated = enumerate_vertices(&cube_hrep(3), &EnumerateOptions::default()).unwrap();
        assert_eq!(enumerated.vertex_matrix(), cube(3).vertex_matrix());
    }
}
