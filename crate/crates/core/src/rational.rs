//! Exact rational helpers on top of [`num_rational::BigRational`].

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_biguint(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from_biguint(Sign::Plus, n.clone()))
}

/// Least integer `>= r`, which must be non-negative.
pub fn ceil_nonneg(r: &Rational) -> Result<BigUint> {
    if r.is_negative() {
        return Err(Error::NegativeParameter(r.to_string()));
    }
    let c = r.ceil().to_integer();
    Ok(c.to_biguint().expect("ceiling of a non-negative rational"))
}

pub fn floor_nonneg(r: &Rational) -> Result<BigUint> {
    if r.is_negative() {
        return Err(Error::NegativeParameter(r.to_string()));
    }
    Ok(r.floor().to_integer().to_biguint().expect("non-negative floor"))
}

/// Decimal expansion rounded half-up to `places` digits, computed exactly.
pub fn to_decimal(r: &Rational, places: usize) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled: BigInt = abs.numer() * &scale * 2 + abs.denom();
    let rounded = scaled.div_floor(&(abs.denom() * BigInt::from(2)));
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let mut out = String::new();
    if neg && !rounded.is_zero() {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if places > 0 {
        out.push('.');
        out.push_str(&format!("{:0>width$}", frac_part.to_string(), width = places));
    }
    out
}

/// Parses `a`, `a/b`, or `-a/b`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Canonical `a/b` text, or `a` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
