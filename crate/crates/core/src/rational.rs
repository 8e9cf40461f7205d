//! Exact rational scalars.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. The helpers here add checked
//! division, integer powers with negative exponents, and the canonical
//! `a/b` text form used by documents and reports.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Result<Rational> {
    if denom == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(BigInt::from(numer), BigInt::from(denom)))
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

/// `base^exp` for any integer exponent; a zero base with negative exponent is an error.
pub fn pow(base: &Rational, exp: i64) -> Result<Rational> {
    if exp < 0 {
        if base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(pow(&base.recip(), -exp)?)
    } else {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc *= base;
        }
        Ok(acc)
    }
}

/// Parses `a`, `-a`, `a/b` (with `b != 0`) into lowest terms.
pub fn parse(text: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(text.to_string());
    let trimmed = text.trim();
    let parse_int = |s: &str| -> Result<BigInt> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    match trimmed.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(trimmed)?)),
        Some((n, d)) => {
            let numer = parse_int(n)?;
            let denom = parse_int(d)?;
            if denom.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// Parses a comma-separated list such as `3,2,1` or `1/2,-3`.
pub fn parse_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse).collect()
}

/// Canonical text: `a/b` in lowest terms, `a` when the denominator is 1.
pub fn format(value: &Rational) -> String {
    value.to_string()
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}

pub fn to_f64(value: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
}
