//! Exact rational scalars and their string grammar.
//!
//! Every number that participates in a decision is a [`Rational`]:
//! arbitrary-precision, always in lowest terms, denominator positive.
//! Floating point never enters the decision path, so equality of two
//! values is well defined and color classes cannot drift.
//!
//! The string grammar accepted by [`parse_rational`] is: an optional
//! sign, then an integer (`"7"`), a fraction (`"3/4"`), or a finite
//! decimal (`"0.25"`). Decimals convert exactly (`"0.5"` becomes
//! `1/2`); irrational coordinates are not representable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Failure to parse a rational string.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational string")]
    Empty,
    #[error("invalid rational syntax: {0:?}")]
    Syntax(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Shorthand for a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for a rational from a numerator/denominator pair.
///
/// Panics on a zero denominator; intended for literals in code and tests.
pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses the rational-string grammar: optional sign, then integer,
/// `p/q`, or finite decimal.
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let s = input.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'+' => (false, &s[1..]),
        b'-' => (true, &s[1..]),
        _ => (false, s),
    };
    if body.is_empty() {
        return Err(ParseRationalError::Syntax(input.to_string()));
    }

    let magnitude = if let Some((num, den)) = body.split_once('/') {
        if !is_digits(num) || !is_digits(den) {
            return Err(ParseRationalError::Syntax(input.to_string()));
        }
        let num: BigInt = num.parse().expect("digits parse as BigInt");
        let den: BigInt = den.parse().expect("digits parse as BigInt");
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(input.to_string()));
        }
        Rational::new(num, den)
    } else if let Some((int_part, frac_part)) = body.split_once('.') {
        // Finite decimal: digits on both sides ("0.5", "12.25").
        if !is_digits(int_part) || !is_digits(frac_part) {
            return Err(ParseRationalError::Syntax(input.to_string()));
        }
        let digits: BigInt = format!("{int_part}{frac_part}")
            .parse()
            .expect("digits parse as BigInt");
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        Rational::new(digits, scale)
    } else {
        if !is_digits(body) {
            return Err(ParseRationalError::Syntax(input.to_string()));
        }
        let n: BigInt = body.parse().expect("digits parse as BigInt");
        Rational::from_integer(n)
    };

    Ok(if negative { -magnitude } else { magnitude })
}

/// Canonical output form: `"p"` for integers, `"p/q"` otherwise, with a
/// leading `-` on negative values. Round-trips through [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when `r` is exactly `+1` or `-1`.
pub fn is_pm_one(r: &Rational) -> bool {
    r.denom().is_one() && r.numer().abs().is_one()
}
