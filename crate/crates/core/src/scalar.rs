//! Exact rational scalars and their textual form (`p/q`, optional sign).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {0:?} (expected p or p/q)")]
pub struct ParseRationalError(pub String);

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integral(x: &Q) -> bool {
    x.is_integer()
}

/// Integer value of `x`, if `x` is an integer that fits in `i64`.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// `x mod m` for a positive integer modulus, returned in `[0, m)`.
pub fn rem_euclid(x: &Q, m: i64) -> Q {
    let m = q(m);
    let k = (x / &m).floor();
    x - k * m
}

/// Parses `p/q` or `p` with an optional leading sign and no whitespace.
pub fn parse_rational(s: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    if s.is_empty() || s.chars().any(char::is_whitespace) {
        return Err(err());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| err())?;
    if den.starts_with(['+', '-']) {
        return Err(err());
    }
    let d: BigInt = den.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Q::new(n, d))
}

/// Formats as `p` for integers and `p/q` otherwise.
pub fn format_rational(x: &Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Falling factorial `n (n−1) ⋯ (n−k+1)`; valid for negative `n`.
pub fn falling(n: i64, k: u32) -> Q {
    let mut acc = Q::one();
    for i in 0..k as i64 {
        acc *= q(n - i);
    }
    acc
}

pub fn binomial(n: u32, k: u32) -> Q {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Q::from_integer(acc)
}

/// Fractional part in `[0, 1)`.
pub fn fract(x: &Q) -> Q {
    x - x.floor()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-7/2").unwrap(), frac(-7, 2));
        assert_eq!(parse_rational("+3").unwrap(), q(3));
        assert_eq!(parse_rational("4/2").unwrap(), q(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1 /2").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&frac(-7, 2)), "-7/2");
        assert_eq!(format_rational(&q(0)), "0");
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(rem_euclid(&frac(-7, 2), 2), frac(1, 2));
        assert_eq!(rem_euclid(&q(-3), 2), q(1));
        assert_eq!(fract(&frac(-1, 3)), frac(2, 3));
        assert_eq!(falling(-2, 3), q(-24));
        assert_eq!(falling(2, 3), q(0));
        assert_eq!(binomial(5, 2), q(10));
    }
}
