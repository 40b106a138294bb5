//! Exact rationals used by every certified quantity.
//!
//! Values are `num_rational::BigRational`, which keeps numerator and
//! denominator in lowest terms with a positive denominator. This module adds
//! the helpers the rest of the crate needs: small-integer constructors, the
//! `"p/q"` string form used in reports, and checked division.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use num_rational::BigRational as Rational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `1 / den`.
pub fn recip(den: i64) -> Rational {
    frac(1, den)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed fraction string {0:?}")]
    Parse(String),
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational, RationalError> {
    if b.is_zero() {
        return Err(RationalError::DivisionByZero);
    }
    Ok(a / b)
}

/// Renders as `"p/q"`, always with an explicit denominator (`"2/1"`).
pub fn to_fraction_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Accepts `"p/q"` or a bare integer `"p"`; the result is normalized.
pub fn parse_fraction(text: &str) -> Result<Rational, RationalError> {
    let bad = || RationalError::Parse(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(RationalError::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Lossy conversion, only for progress output.
pub fn approx_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn is_positive(value: &Rational) -> bool {
    value.is_positive()
}

pub fn is_one(value: &Rational) -> bool {
    value.is_one()
}

/// Serde adapter writing a rational as its fraction string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frac(pub Rational);

impl From<Rational> for Frac {
    fn from(value: Rational) -> Self {
        Frac(value)
    }
}

impl From<&Rational> for Frac {
    fn from(value: &Rational) -> Self {
        Frac(value.clone())
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_fraction_string(&self.0))
    }
}

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&to_fraction_string(&self.0))
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_fraction(&text)
            .map(Frac)
            .map_err(serde::de::Error::custom)
    }
}
