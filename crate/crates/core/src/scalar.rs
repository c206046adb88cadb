//! Exact rational scalars and the handful of combinatorial helpers the
//! λ-bracket calculus needs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; `BigRational` keeps the canonical reduced
/// form with a positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `(-1)^k` as a scalar.
pub fn sign_pow(k: u32) -> Scalar {
    if k.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

pub fn binomial(n: u32, k: u32) -> Scalar {
    if k > n {
        return zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    Scalar::from_integer(acc)
}

/// `n (n-1) ... (n-k+1)`; zero when `k > n`.
pub fn falling(n: u32, k: u32) -> Scalar {
    if k > n {
        return zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
    }
    Scalar::from_integer(acc)
}

pub fn factorial(n: u32) -> Scalar {
    falling(n, n)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Decimal points are rejected so that
/// no float ever sneaks into a document.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    if t.is_empty() || t.contains('.') || t.contains('e') || t.contains('E') {
        return Err(bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// Canonical `"p/q"` rendering; integers render as `"p"`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Magnitude used to summarize residuals in reports.
pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "1", "-3", "3/7", "-1/24", "12/4"] {
            let x = parse_scalar(s).unwrap();
            let back = parse_scalar(&format_scalar(&x)).unwrap();
            assert_eq!(x, back);
        }
        assert_eq!(format_scalar(&parse_scalar("12/4").unwrap()), "3");
        assert_eq!(format_scalar(&parse_scalar("2/-4").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_floats_and_zero_denominators() {
        assert!(parse_scalar("0.5").is_err());
        assert!(parse_scalar("1e3").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("a/b").is_err());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(3, 4), zero());
        assert_eq!(falling(5, 3), int(60));
        assert_eq!(falling(2, 3), zero());
        assert_eq!(factorial(4), int(24));
        assert_eq!(sign_pow(3), int(-1));
    }
}
