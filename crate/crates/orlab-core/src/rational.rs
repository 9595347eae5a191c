//! Exact rational scalars and their text form.
//!
//! Every number in this crate is a [`Rational`]. Values cross the CLI and
//! JSON boundaries as reduced `p/q` strings with the `/q` part omitted when
//! the denominator is one; no floating point is accepted or produced.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p` or `p/q` with an optional leading sign. The result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let parse_int = |part: &str| -> Result<BigInt, ParseRationalError> {
        if part.is_empty() || part == "-" || part == "+" {
            return Err(ParseRationalError::Invalid(s.to_string()));
        }
        let digits = part.strip_prefix('+').unwrap_or(part);
        if digits.strip_prefix('-').unwrap_or(digits).is_empty()
            || !digits
                .strip_prefix('-')
                .unwrap_or(digits)
                .bytes()
                .all(|b| b.is_ascii_digit())
        {
            return Err(ParseRationalError::Invalid(s.to_string()));
        }
        digits
            .parse::<BigInt>()
            .map_err(|_| ParseRationalError::Invalid(s.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Renders a rational as `p/q`, omitting `/q` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `m!!` for small non-negative `m` (with `(-1)!! = 0!! = 1`).
pub fn double_factorial(m: u32) -> BigInt {
    let mut acc = BigInt::one();
    let mut v = m;
    while v > 1 {
        acc *= BigInt::from(v);
        v -= 2;
    }
    acc
}
