//! Exact rational scalars and small helpers around `BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

pub fn to_f64(x: &Q) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale both parts down so the quotient survives f64 range.
            let nb = x.numer().bits() as i64;
            let db = x.denom().bits() as i64;
            let shift = (nb.max(db) - 1000).max(0) as usize;
            let n = (x.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (x.denom() >> shift).to_f64().unwrap_or(1.0);
            if d == 0.0 {
                if n >= 0.0 { f64::INFINITY } else { f64::NEG_INFINITY }
            } else {
                n / d
            }
        }
    }
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Parses `7`, `-3/4` or a plain decimal such as `0.01` / `-1.5e-2` into an exact rational.
pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if let Some((a, b)) = t.split_once('/') {
        let n: BigInt = a.trim().parse().map_err(|_| ParseRationalError::Invalid(t.into()))?;
        let d: BigInt = b.trim().parse().map_err(|_| ParseRationalError::Invalid(t.into()))?;
        if d.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(t.into()));
        }
        return Ok(Q::new(n, d));
    }
    if let Ok(n) = t.parse::<BigInt>() {
        return Ok(Q::from_integer(n));
    }
    parse_decimal(t).ok_or_else(|| ParseRationalError::Invalid(t.into()))
}

fn parse_decimal(t: &str) -> Option<Q> {
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    if neg {
        n = -n;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        Q::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        Q::new(n, num_traits::pow(ten, (-scale) as usize))
    })
}

/// Parses a comma separated vector such as `1,1,1/100`.
pub fn parse_q_vec(s: &str) -> Result<Vec<Q>, ParseRationalError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_q).collect()
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Falling factorial `x (x-1) ... (x-k+1)`.
pub fn falling(x: &Q, k: u64) -> Q {
    let mut acc = Q::one();
    let mut cur = x.clone();
    for _ in 0..k {
        acc *= &cur;
        cur -= Q::one();
    }
    acc
}

/// Falling factorial on machine integers, returned exactly.
pub fn falling_int(x: i64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= BigInt::from(x - i);
    }
    acc
}

pub fn pow_q(x: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Serde adapter writing a rational as the string `fmt_q` produces.
pub mod serde_q {
    use super::{fmt_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let text = String::deserialize(d)?;
        parse_q(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for vectors of rationals, one string per entry.
pub mod serde_q_vec {
    use super::{fmt_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(fmt_q).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts.iter().map(|t| parse_q(t).map_err(serde::de::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_q("3/4").unwrap(), qr(3, 4));
        assert_eq!(parse_q("-2").unwrap(), q(-2));
        assert_eq!(parse_q("0.01").unwrap(), qr(1, 100));
        assert_eq!(parse_q("-1.5e-2").unwrap(), qr(-3, 200));
        assert_eq!(parse_q("2e3").unwrap(), q(2000));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
        assert!(parse_q("").is_err());
    }

    #[test]
    fn vector_parsing() {
        assert_eq!(parse_q_vec("1,1,0.01").unwrap(), vec![q(1), q(1), qr(1, 100)]);
        assert!(parse_q_vec("").unwrap().is_empty());
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling(&q(5), 2), q(20));
        assert_eq!(falling(&q(-1), 3), q(-6));
        assert_eq!(falling_int(2, 3), BigInt::zero());
        assert_eq!(binomial(6, 3), BigInt::from(20));
    }

    #[test]
    fn float_conversion_handles_huge_values() {
        let big = Q::new(num_traits::pow(BigInt::from(10), 400), num_traits::pow(BigInt::from(10), 399));
        assert!((to_f64(&big) - 10.0).abs() < 1e-9);
        assert_eq!(to_f64(&qr(1, 4)), 0.25);
    }
}
