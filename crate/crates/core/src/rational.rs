//! Exact rationals and their canonical text form.
//!
//! `Rational` is `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator, so comparing against zero is a single check on
//! the numerator.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("sign not allowed on denominator in `{0}`")]
    SignedDenominator(String),
}

/// Parses `p`, `-p`, `p/q` or `-p/q`. The denominator must be a nonzero,
/// unsigned integer.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseError::Empty);
    }
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_integer(s)?)),
        Some((num, den)) => {
            let den = den.trim();
            if den.starts_with('-') || den.starts_with('+') {
                return Err(ParseError::SignedDenominator(s.to_string()));
            }
            let num = parse_integer(num)?;
            let den = parse_integer(den)?;
            if den.is_zero() {
                return Err(ParseError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

pub fn parse_integer(text: &str) -> Result<BigInt, ParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseError::Empty);
    }
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::BadInteger(s.to_string()));
    }
    BigInt::from_str(s).map_err(|_| ParseError::BadInteger(s.to_string()))
}

/// Parses a comma-separated list of signed integers such as `1,-1,1,14,2`.
pub fn parse_integer_list(text: &str) -> Result<Vec<BigInt>, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    text.split(',').map(parse_integer).collect()
}

pub fn format_integer_list(values: &[BigInt]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn exact_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let n = value.numer();
    let d = value.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

/// Returns the integer value when the rational has denominator one.
pub fn as_integer(value: &Rational) -> Option<BigInt> {
    value.denom().is_one().then(|| value.numer().clone())
}
