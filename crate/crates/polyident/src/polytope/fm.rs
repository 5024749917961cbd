//! Exact Fourier–Motzkin feasibility for small linear inequality systems.
//!
//! Desk-scale only: row counts can grow quadratically per eliminated
//! variable, so callers keep variable counts modest (boundedness checks
//! eliminate at most `dim` variables, extremality checks one λ per
//! vertex). Rows are canonicalized and deduplicated between rounds to
//! tame the growth.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// Hard stop against pathological blowup; far beyond anything the
/// library's callers produce.
const ROW_LIMIT: usize = 400_000;

/// Conjunction of constraints `coeffs · x ≤ rhs` over `nvars` variables.
pub(crate) struct LinSystem {
    nvars: usize,
    rows: Vec<(Vec<Rational>, Rational)>,
}

impl LinSystem {
    pub fn new(nvars: usize) -> Self {
        LinSystem {
            nvars,
            rows: Vec::new(),
        }
    }

    pub fn add_le(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        debug_assert_eq!(coeffs.len(), self.nvars);
        self.rows.push((coeffs, rhs));
    }

    pub fn add_eq(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        let negated: Vec<Rational> = coeffs.iter().map(|c| -c).collect();
        self.add_le(negated, -rhs.clone());
        self.add_le(coeffs, rhs);
    }

    /// Exact satisfiability over the rationals.
    pub fn feasible(self) -> bool {
        let mut rows = self.rows;
        loop {
            // Canonicalize: positive-scale each row so its leading
            // coefficient is ±1, drop tautologies, stop on contradictions,
            // dedup.
            let mut canon: BTreeSet<(Vec<Rational>, Rational)> = BTreeSet::new();
            for (coeffs, rhs) in rows {
                match coeffs.iter().position(|c| !c.is_zero()) {
                    Some(lead) => {
                        let scale = coeffs[lead].abs();
                        let scaled: Vec<Rational> = coeffs.iter().map(|c| c / &scale).collect();
                        canon.insert((scaled, rhs / scale));
                    }
                    None if rhs.is_negative() => return false, // 0 ≤ negative
                    None => {}                                 // 0 ≤ nonneg, drop
                }
            }
            if canon.is_empty() {
                return true;
            }

            // Eliminate the variable adding the fewest rows (pos·neg pairs
            // replace pos+neg rows).
            let mut counts = vec![(0usize, 0usize); self.nvars];
            for (coeffs, _) in &canon {
                for (k, c) in coeffs.iter().enumerate() {
                    if c.is_positive() {
                        counts[k].0 += 1;
                    } else if c.is_negative() {
                        counts[k].1 += 1;
                    }
                }
            }
            let var = (0..self.nvars)
                .filter(|&k| counts[k].0 + counts[k].1 > 0)
                .min_by_key(|&k| {
                    let (p, n) = counts[k];
                    (p * n) as isize - (p + n) as isize
                })
                .expect("nonempty canonical rows mention a variable");

            let mut kept: Vec<(Vec<Rational>, Rational)> = Vec::new();
            let mut pos: Vec<(Vec<Rational>, Rational)> = Vec::new();
            let mut neg: Vec<(Vec<Rational>, Rational)> = Vec::new();
            for row in canon {
                if row.0[var].is_positive() {
                    pos.push(row);
                } else if row.0[var].is_negative() {
                    neg.push(row);
                } else {
                    kept.push(row);
                }
            }
            // One-signed variables are unbounded on the other side: every
            // row mentioning them is satisfiable alone, so they just drop.
            for (p_coeffs, p_rhs) in &pos {
                for (n_coeffs, n_rhs) in &neg {
                    // positive combination cancelling `var`
                    let a = &p_coeffs[var]; // > 0
                    let b = &n_coeffs[var]; // < 0
                    let coeffs: Vec<Rational> = (0..self.nvars)
                        .map(|k| -(b * &p_coeffs[k]) + a * &n_coeffs[k])
                        .collect();
                    debug_assert!(coeffs[var].is_zero());
                    kept.push((coeffs, -(b * p_rhs) + a * n_rhs));
                }
            }
            assert!(
                kept.len() <= ROW_LIMIT,
                "Fourier-Motzkin blowup beyond supported scale ({} rows)",
                kept.len()
            );
            rows = kept;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn le(sys: &mut LinSystem, coeffs: &[i64], rhs: i64) {
        sys.add_le(coeffs.iter().map(|&c| rat(c)).collect(), rat(rhs));
    }

    #[test]
    fn empty_system_is_feasible() {
        assert!(LinSystem::new(3).feasible());
    }

    #[test]
    fn box_is_feasible() {
        let mut sys = LinSystem::new(2);
        le(&mut sys, &[1, 0], 1);
        le(&mut sys, &[-1, 0], 1);
        le(&mut sys, &[0, 1], 1);
        le(&mut sys, &[0, -1], 1);
        assert!(sys.feasible());
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        // x ≤ −1 and −x ≤ 0 (x ≥ 0)
        let mut sys = LinSystem::new(1);
        le(&mut sys, &[1], -1);
        le(&mut sys, &[-1], 0);
        assert!(!sys.feasible());
    }

    #[test]
    fn equality_intersection() {
        // x + y = 1, x − y = 1, x ≤ 0 → would force x = 1: infeasible
        let mut sys = LinSystem::new(2);
        sys.add_eq(vec![rat(1), rat(1)], rat(1));
        sys.add_eq(vec![rat(1), rat(-1)], rat(1));
        le(&mut sys, &[1, 0], 0);
        assert!(!sys.feasible());

        let mut sys = LinSystem::new(2);
        sys.add_eq(vec![rat(1), rat(1)], rat(1));
        sys.add_eq(vec![rat(1), rat(-1)], rat(1));
        le(&mut sys, &[1, 0], 1);
        assert!(sys.feasible());
    }

    #[test]
    fn rational_midpoint_combination() {
        // λ₀ + λ₁ = 1, λ ≥ 0, (λ₀·1 + λ₁·0, λ₀·0 + λ₁·1) = (1/2, 1/2)
        let mut sys = LinSystem::new(2);
        sys.add_eq(vec![rat(1), rat(0)], ratio(1, 2));
        sys.add_eq(vec![rat(0), rat(1)], ratio(1, 2));
        sys.add_eq(vec![rat(1), rat(1)], rat(1));
        le(&mut sys, &[-1, 0], 0);
        le(&mut sys, &[0, -1], 0);
        assert!(sys.feasible());
    }
}
