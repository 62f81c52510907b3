//! Exact rationals.
//!
//! Values are `num_rational::BigRational`, always kept in lowest terms with a
//! positive denominator. JSON encodes a rational as `{"num": .., "den": ..}`
//! with integer fields; values that do not fit an `i64` fall back to decimal
//! strings so nothing is ever rounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn from_u64(value: u64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// True iff `2r` is an integer.
pub fn is_half_integer(r: &Rational) -> bool {
    r.denom().is_one() || *r.denom() == BigInt::from(2)
}

pub fn half() -> Rational {
    rat(1, 2)
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}

fn int_json(value: &BigInt) -> Value {
    match value.to_i64() {
        Some(v) => json!(v),
        None => json!(value.to_string()),
    }
}

pub fn to_json(r: &Rational) -> Value {
    json!({ "num": int_json(r.numer()), "den": int_json(r.denom()) })
}

fn int_from_json(value: &Value) -> Option<BigInt> {
    match value {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

pub fn from_json(value: &Value) -> Option<Rational> {
    let num = int_from_json(value.get("num")?)?;
    let den = int_from_json(value.get("den")?)?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Parses `a`, `a/b`, or `-a/b`.
pub fn parse(text: &str) -> Option<Rational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (text.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn display(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Smallest integer not below `r`.
pub fn ceil(r: &Rational) -> Rational {
    r.ceil()
}

pub fn floor(r: &Rational) -> Rational {
    r.floor()
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
