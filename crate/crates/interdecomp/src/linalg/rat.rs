//! Arbitrary-precision rational scalars and their canonical string form.
//!
//! Every scalar in this crate is an exact rational number; nothing is ever
//! rounded. Values are kept in lowest terms with a positive denominator, and
//! serialize as `"p/q"` (or just `"p"` when the denominator is 1).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar, always reduced, denominator always positive.
pub type Rat = num_rational::BigRational;

/// Error returned when a rational literal cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}` in rational literal")]
    BadInteger(String),
    #[error("zero denominator in rational literal `{0}`")]
    ZeroDenominator(String),
}

/// Builds `n/d` from machine integers. Panics if `d` is zero.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "rational denominator must be nonzero");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer rational `n`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` (optionally signed) into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    let parse_int = |part: &str| -> Result<BigInt, RatParseError> {
        part.trim()
            .parse::<BigInt>()
            .map_err(|_| RatParseError::BadInteger(part.trim().to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(RatParseError::ZeroDenominator(s.to_string()));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Formats a rational canonically: lowest terms, `"p"` for integers,
/// `"p/q"` with `q > 0` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when `r` is negative. Convenience re-export used by validators.
pub fn is_negative(r: &Rat) -> bool {
    r.is_negative()
}
