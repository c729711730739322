//! Exact rationals and their rendering in reports.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

pub type Rational = num_rational::BigRational;

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q`, or just `p` for integers.
pub fn to_string(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Decimal rendering with `places` digits, rounded half away from zero.
pub fn to_decimal(r: &Rational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let num: BigInt = r.numer().abs() * &scale * 2 + r.denom();
    let (q, _) = num.div_rem(&(r.denom() * BigInt::from(2)));
    let digits = q.to_string();
    let sign = if r.is_negative() && q.sign() != num_bigint::Sign::NoSign { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{digits}");
    }
    let p = places as usize;
    let padded = format!("{digits:0>width$}", width = p + 1);
    let (int_part, frac) = padded.split_at(padded.len() - p);
    format!("{sign}{int_part}.{frac}")
}

/// Parses `p`, `p/q`, or a finite decimal such as `1.5`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((i, f)) = s.split_once('.') {
        if f.is_empty() || !f.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits: BigInt = format!("{i}{f}").parse().ok()?;
        let den = BigInt::from(10u32).pow(f.len() as u32);
        return Some(Rational::new(digits, den));
    }
    Some(Rational::from_integer(s.parse().ok()?))
}
