//! Arbitrary-precision rationals.
//!
//! `num_rational::BigRational` already keeps its values in lowest terms with a
//! positive denominator, which is exactly the invariant we need, so it is used
//! directly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Accepts `p`, `p/q` or a plain decimal such as `-0.0125`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_digits = int_part.trim().trim_start_matches(['-', '+']);
        if !frac_part.chars().all(|c| c.is_ascii_digit()) || !int_digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let whole: BigInt = if int_digits.is_empty() { BigInt::zero() } else { int_digits.parse().ok()? };
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac: BigInt = if frac_part.is_empty() { BigInt::zero() } else { frac_part.parse().ok()? };
        let mut num = whole * &scale + frac;
        if negative {
            num = -num;
        }
        return Some(Rational::new(num, scale));
    }
    let n: BigInt = t.parse().ok()?;
    Some(Rational::from_integer(n))
}

pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Natural log of a nonzero big integer's absolute value, accurate to f64 precision.
pub fn ln_abs(n: &BigInt) -> f64 {
    let a = n.abs();
    if a.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = a.bits();
    if bits <= 1000 {
        return a.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = &a >> shift;
    top.to_f64().unwrap().ln() + (shift as f64) * std::f64::consts::LN_2
}

pub fn to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * (ln_abs(r.numer()) - ln_abs(r.denom())).exp()
}
