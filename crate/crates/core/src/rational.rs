//! Exact rational helpers shared by every module.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduced rational with arbitrary-precision numerator and positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `1 / base^exp`.
pub fn inverse_power(base: u64, exp: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(base).pow(exp))
}

/// Binomial coefficient extended by zero: `C(n, k) = 0` whenever `n < 0`,
/// `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Canonical `"a/b"` text used in JSON and CSV output. The denominator is
/// always written, including `/1`.
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Domain(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Decimal rendering rounded half away from zero to `digits` places.
pub fn to_decimal_string(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2u32;
    let rounded = if &twice >= scaled.denom() { q + 1u32 } else { q };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !rounded_is_zero(&int_part, &frac_part) {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

fn rounded_is_zero(a: &BigInt, b: &BigInt) -> bool {
    a.is_zero() && b.is_zero()
}

/// Lossy conversion, only for display and tolerance checks on smoke tests.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&to_fraction_string(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(59, 30), "59132290782430712".parse::<BigInt>().unwrap());
    }

    #[test]
    fn fraction_text_round_trips() {
        let r = ratio(-6, 27);
        assert_eq!(to_fraction_string(&r), "-2/9");
        assert_eq!(parse_rational("-2/9").unwrap(), r);
        assert_eq!(to_fraction_string(&int(1)), "1/1");
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(to_decimal_string(&ratio(2, 9), 4), "0.2222");
        assert_eq!(to_decimal_string(&ratio(2, 3), 3), "0.667");
        assert_eq!(to_decimal_string(&ratio(-1, 8), 2), "-0.13");
        assert_eq!(to_decimal_string(&ratio(7, 2), 0), "4");
        assert_eq!(to_decimal_string(&ratio(-1, 1000), 2), "0.00");
    }
}
