//! Exact H→V conversion by exhaustive basis enumeration.
//!
//! Every n-subset of inequality rows with linearly independent left-hand
//! sides pins down one candidate point; the candidates satisfying the
//! whole system are exactly the vertices. Subsets are walked
//! depth-first with incremental elimination so dependent prefixes prune
//! early. Systems whose entries are small integers (the common case —
//! the random generator emits only 0/±1 coefficients) run on an
//! i128 fraction-free path with checked arithmetic; anything else, or an
//! overflow, falls back to full rational arithmetic.

use std::collections::BTreeSet;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::{check_bounded, HRepresentation, Polytope};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    /// Run the recession-cone boundedness check before enumerating.
    pub check_bounded: bool,
    /// Refuse inputs with more than this many candidate row subsets.
    pub subset_cap: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            check_bounded: false,
            subset_cap: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("polyhedron is unbounded")]
    UnboundedPolytope,
    #[error("C({rows},{dim}) row subsets exceed the cap of {cap}")]
    TooManyFacets { rows: usize, dim: usize, cap: u64 },
}

/// Enumerates the vertices of `{x | Ax ≤ b}`. Output vertices are
/// deduplicated and ordered lexicographically.
pub fn enumerate_vertices(
    h: &HRepresentation,
    opts: &EnumerateOptions,
) -> Result<Polytope, EnumerateError> {
    if opts.check_bounded && !check_bounded(h) {
        return Err(EnumerateError::UnboundedPolytope);
    }
    let (f, n) = (h.num_rows(), h.dim());
    if binomial(f, n) > opts.subset_cap as u128 {
        return Err(EnumerateError::TooManyFacets {
            rows: f,
            dim: n,
            cap: opts.subset_cap,
        });
    }
    let vertices = match IntSystem::try_from_hrep(h) {
        Some(sys) => sys.enumerate().unwrap_or_else(|Overflow| enumerate_rational(h)),
        None => enumerate_rational(h),
    };
    if vertices.is_empty() {
        return Err(EnumerateError::EmptyPolytope);
    }
    let list: Vec<Vec<Rational>> = vertices.into_iter().collect();
    Ok(Polytope::from_vertices(n, &list, None).expect("enumerated vertices are well-shaped"))
}

/// C(f, n) with saturation; exact as long as it fits u128.
fn binomial(f: usize, n: usize) -> u128 {
    if n > f {
        return 0;
    }
    let k = n.min(f - n);
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul((f - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1), // exact: product of i+1 consecutive ints
            None => return u128::MAX,
        }
    }
    acc
}

// ---- integer fast path ----

struct Overflow;

fn gcd_i128(a: i128, b: i128) -> Result<i128, Overflow> {
    if a == i128::MIN || b == i128::MIN {
        return Err(Overflow);
    }
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    Ok(a)
}

/// Reduced fraction, positive denominator.
#[derive(Clone)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn new(num: i128, den: i128) -> Result<Frac, Overflow> {
        debug_assert!(den != 0);
        let g = gcd_i128(num, den)?;
        let (mut num, mut den) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if den < 0 {
            num = num.checked_neg().ok_or(Overflow)?;
            den = den.checked_neg().ok_or(Overflow)?;
        }
        Ok(Frac { num, den })
    }

    fn sub_scaled(&self, c: i128, other: &Frac) -> Result<Frac, Overflow> {
        // self − c·other
        let num = self
            .num
            .checked_mul(other.den)
            .ok_or(Overflow)?
            .checked_sub(
                c.checked_mul(other.num)
                    .ok_or(Overflow)?
                    .checked_mul(self.den)
                    .ok_or(Overflow)?,
            )
            .ok_or(Overflow)?;
        let den = self.den.checked_mul(other.den).ok_or(Overflow)?;
        Frac::new(num, den)
    }
}

struct BasisRow {
    coeffs: Vec<i128>,
    rhs: i128,
    pivot: usize,
}

struct IntSystem {
    n: usize,
    rows: Vec<Vec<i64>>,
    b: Vec<i64>,
}

impl IntSystem {
    fn try_from_hrep(h: &HRepresentation) -> Option<IntSystem> {
        const LIMIT: i64 = 1 << 20;
        let small = |r: &Rational| -> Option<i64> {
            if !r.is_integer() {
                return None;
            }
            let v = r.to_integer().to_i64()?;
            (v.abs() <= LIMIT).then_some(v)
        };
        let n = h.dim();
        let mut rows = Vec::with_capacity(h.num_rows());
        let mut b = Vec::with_capacity(h.num_rows());
        for i in 0..h.num_rows() {
            rows.push(
                h.a_matrix()
                    .row(i)
                    .iter()
                    .map(&small)
                    .collect::<Option<Vec<i64>>>()?,
            );
            b.push(small(&h.b_vector()[i])?);
        }
        Some(IntSystem { n, rows, b })
    }

    fn enumerate(&self) -> Result<BTreeSet<Vec<Rational>>, Overflow> {
        let mut out = BTreeSet::new();
        let mut basis = Vec::with_capacity(self.n);
        self.search(0, &mut basis, &mut out)?;
        Ok(out)
    }

    fn search(
        &self,
        start: usize,
        basis: &mut Vec<BasisRow>,
        out: &mut BTreeSet<Vec<Rational>>,
    ) -> Result<(), Overflow> {
        if basis.len() == self.n {
            let x = self.solve(basis)?;
            if self.feasible(&x)? {
                out.insert(
                    x.iter()
                        .map(|f| Rational::new(f.num.into(), f.den.into()))
                        .collect(),
                );
            }
            return Ok(());
        }
        let need = self.n - basis.len();
        let mut idx = start;
        while idx + need <= self.rows.len() {
            let mut coeffs: Vec<i128> = self.rows[idx].iter().map(|&v| v as i128).collect();
            let mut rhs = self.b[idx] as i128;
            reduce_int(basis, &mut coeffs, &mut rhs)?;
            // dependent rows (zero coefficients) cannot join a basis
            if let Some(pivot) = coeffs.iter().position(|&v| v != 0) {
                basis.push(BasisRow { coeffs, rhs, pivot });
                self.search(idx + 1, basis, out)?;
                basis.pop();
            }
            idx += 1;
        }
        Ok(())
    }

    /// Back-substitution in reverse basis order: row i has zero
    /// coefficients at the pivots of rows 0..i, so the last row pins its
    /// pivot coordinate directly and earlier rows only reference pivots
    /// already solved.
    fn solve(&self, basis: &[BasisRow]) -> Result<Vec<Frac>, Overflow> {
        let mut x: Vec<Option<Frac>> = vec![None; self.n];
        for br in basis.iter().rev() {
            let mut acc = Frac { num: br.rhs, den: 1 };
            for (k, &c) in br.coeffs.iter().enumerate() {
                if k == br.pivot || c == 0 {
                    continue;
                }
                let xk = x[k].as_ref().expect("later pivots are solved first");
                acc = acc.sub_scaled(c, xk)?;
            }
            let lead = br.coeffs[br.pivot];
            x[br.pivot] = Some(Frac::new(acc.num, acc.den.checked_mul(lead).ok_or(Overflow)?)?);
        }
        Ok(x.into_iter().map(|v| v.expect("all pivots solved")).collect())
    }

    fn feasible(&self, x: &[Frac]) -> Result<bool, Overflow> {
        // common denominator, then pure integer comparisons per row
        let mut d: i128 = 1;
        for f in x {
            let g = gcd_i128(d, f.den)?;
            d = (d / g).checked_mul(f.den).ok_or(Overflow)?;
        }
        let y: Vec<i128> = x
            .iter()
            .map(|f| f.num.checked_mul(d / f.den).ok_or(Overflow))
            .collect::<Result<_, _>>()?;
        for (row, &b) in self.rows.iter().zip(&self.b) {
            let mut acc: i128 = 0;
            for (&a, &yk) in row.iter().zip(&y) {
                if a != 0 {
                    acc = acc
                        .checked_add((a as i128).checked_mul(yk).ok_or(Overflow)?)
                        .ok_or(Overflow)?;
                }
            }
            if acc > (b as i128).checked_mul(d).ok_or(Overflow)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn reduce_int(basis: &[BasisRow], coeffs: &mut [i128], rhs: &mut i128) -> Result<(), Overflow> {
    for br in basis {
        let c = coeffs[br.pivot];
        if c == 0 {
            continue;
        }
        let lead = br.coeffs[br.pivot];
        for (k, v) in coeffs.iter_mut().enumerate() {
            *v = lead
                .checked_mul(*v)
                .ok_or(Overflow)?
                .checked_sub(c.checked_mul(br.coeffs[k]).ok_or(Overflow)?)
                .ok_or(Overflow)?;
        }
        *rhs = lead
            .checked_mul(*rhs)
            .ok_or(Overflow)?
            .checked_sub(c.checked_mul(br.rhs).ok_or(Overflow)?)
            .ok_or(Overflow)?;
        // keep magnitudes small
        let mut g = *rhs;
        for &v in coeffs.iter() {
            g = gcd_i128(g, v)?;
        }
        if g > 1 {
            for v in coeffs.iter_mut() {
                *v /= g;
            }
            *rhs /= g;
        }
    }
    Ok(())
}

// ---- general rational path ----

struct RatBasisRow {
    coeffs: Vec<Rational>,
    rhs: Rational,
    pivot: usize,
}

fn enumerate_rational(h: &HRepresentation) -> BTreeSet<Vec<Rational>> {
    let n = h.dim();
    let mut out = BTreeSet::new();
    let mut basis: Vec<RatBasisRow> = Vec::with_capacity(n);
    search_rational(h, 0, &mut basis, &mut out);
    out
}

fn search_rational(
    h: &HRepresentation,
    start: usize,
    basis: &mut Vec<RatBasisRow>,
    out: &mut BTreeSet<Vec<Rational>>,
) {
    let n = h.dim();
    if basis.len() == n {
        let x = solve_rational(n, basis);
        if feasible_rational(h, &x) {
            out.insert(x);
        }
        return;
    }
    let need = n - basis.len();
    let mut idx = start;
    while idx + need <= h.num_rows() {
        let mut coeffs: Vec<Rational> = h.a_matrix().row(idx).to_vec();
        let mut rhs = h.b_vector()[idx].clone();
        for br in basis.iter() {
            let c = coeffs[br.pivot].clone();
            if c.is_zero() {
                continue;
            }
            let factor = c / &br.coeffs[br.pivot];
            for (k, v) in coeffs.iter_mut().enumerate() {
                *v -= &factor * &br.coeffs[k];
            }
            rhs -= factor * &br.rhs;
        }
        if let Some(pivot) = coeffs.iter().position(|v| !v.is_zero()) {
            basis.push(RatBasisRow { coeffs, rhs, pivot });
            search_rational(h, idx + 1, basis, out);
            basis.pop();
        }
        idx += 1;
    }
}

fn solve_rational(n: usize, basis: &[RatBasisRow]) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); n];
    let mut known = vec![false; n];
    for br in basis.iter().rev() {
        let mut acc = br.rhs.clone();
        for (k, c) in br.coeffs.iter().enumerate() {
            if k == br.pivot || c.is_zero() {
                continue;
            }
            debug_assert!(known[k]);
            acc -= c * &x[k];
        }
        x[br.pivot] = acc / &br.coeffs[br.pivot];
        known[br.pivot] = true;
    }
    x
}

fn feasible_rational(h: &HRepresentation, x: &[Rational]) -> bool {
    for i in 0..h.num_rows() {
        let mut acc = Rational::zero();
        for (k, a) in h.a_matrix().row(i).iter().enumerate() {
            if !a.is_zero() {
                acc += a * &x[k];
            }
        }
        if acc > h.b_vector()[i] {
            return false;
        }
    }
    true
}
