//! Exact scalar types and rational string encoding.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer types the exact linear algebra can run over.
///
/// Implemented for `i64`, `i128` and `BigInt`. Primitive widths are fast but
/// can overflow on large Gram matrices; `BigInt` never does.
pub trait ExactInt:
    Integer
    + Signed
    + Roots
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> ExactInt for T where
    T: Integer
        + Signed
        + Roots
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Rational numbers over an exact integer type.
pub type Q<T> = Ratio<T>;

/// Builds an integer of any [`ExactInt`] type from an `i64`.
pub fn int<T: ExactInt>(v: i64) -> T {
    T::from_i64(v).expect("every ExactInt type holds an i64")
}

/// Builds a rational `n/d`.
pub fn ratio<T: ExactInt>(n: i64, d: i64) -> Q<T> {
    Ratio::new(int(n), int(d))
}

/// Builds an integral rational.
pub fn rat<T: ExactInt>(n: i64) -> Q<T> {
    Ratio::from_integer(int(n))
}

/// Converts between integer types, failing when the value does not fit.
pub fn convert_int<S: ExactInt, T: ExactInt>(v: &S) -> Option<T> {
    if let Some(x) = v.to_i64() {
        return T::from_i64(x);
    }
    let text = v.to_string();
    let big: BigInt = text.parse().ok()?;
    big_to::<T>(&big)
}

fn big_to<T: ExactInt>(v: &BigInt) -> Option<T> {
    if let Some(x) = v.to_i64() {
        return T::from_i64(x);
    }
    if let Some(x) = v.to_i128() {
        return T::from_i128(x);
    }
    // Only BigInt itself can hold anything wider; go through a decimal round trip.
    let mut acc = T::zero();
    let ten = int::<T>(10);
    let negative = v.is_negative();
    for digit in v.abs().to_string().bytes() {
        acc = acc * ten.clone() + int::<T>((digit - b'0') as i64);
    }
    Some(if negative { -acc } else { acc })
}

/// Converts a rational between integer backends.
pub fn convert_ratio<S: ExactInt, T: ExactInt>(v: &Q<S>) -> Option<Q<T>> {
    Some(Ratio::new(
        convert_int(v.numer())?,
        convert_int(v.denom())?,
    ))
}

/// Formats a rational as `"a/b"` in lowest terms with `b > 0`.
pub fn format_ratio<T: ExactInt>(v: &Q<T>) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Parses `"a/b"` or `"a"` into a rational.
pub fn parse_ratio<T: ExactInt>(text: &str) -> Result<Q<T>> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    let n = big_to::<T>(&n).ok_or_else(bad)?;
    let d = big_to::<T>(&d).ok_or_else(bad)?;
    Ok(Ratio::new(n, d))
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn common_denominator<T: ExactInt>(values: &[Q<T>]) -> T {
    values
        .iter()
        .fold(T::one(), |acc, v| acc.lcm(v.denom()))
}

/// Largest integer `r` with `r*r <= v`, for `v >= 0`.
pub fn isqrt<T: ExactInt>(v: &T) -> T {
    if v.is_negative() || v.is_zero() {
        return T::zero();
    }
    v.sqrt()
}

/// Residue of `a` modulo `m` in `[0, m)`.
pub fn modulo<T: ExactInt>(a: &T, m: &T) -> T {
    a.mod_floor(m)
}

/// Fractional part of a rational, in `[0, 1)`.
pub fn frac<T: ExactInt>(v: &Q<T>) -> Q<T> {
    v - v.floor()
}

/// True when the rational is an integer.
pub fn is_integral<T: ExactInt>(v: &Q<T>) -> bool {
    v.denom().is_one()
}
