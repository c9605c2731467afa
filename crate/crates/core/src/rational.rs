//! Exact rational scalars and their string encoding.
//!
//! Every geometric quantity in this crate is a [`Rational`]: an
//! arbitrary-precision fraction kept in lowest terms with a positive
//! denominator. Rationals cross file boundaries as strings `"a/b"` or `"a"`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

/// Arbitrary-precision exact rational, always normalized.
pub type Rational = BigRational;

/// Error produced when a rational string cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"a/b"`, `"-a/b"` or `"a"`; whitespace around the parts is ignored.
pub fn parse(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical string form: `"a"` for integers, `"a/b"` otherwise.
pub fn format(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering rounded half away from zero to `digits` fractional digits.
/// Display only; never fed back into computation.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let q = if rem * BigInt::from(2) >= *scaled.denom() { q + 1 } else { q };
    let (int_part, frac_part) = q.div_rem(&scale);
    let sign = if r.is_negative() && !q_is_zero(&int_part, &frac_part) {
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

fn q_is_zero(a: &BigInt, b: &BigInt) -> bool {
    a.is_zero() && b.is_zero()
}

/// Natural logarithm of a positive big integer, computed without overflow.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        n.to_f64().map(f64::ln).unwrap_or(f64::INFINITY)
    } else {
        let shift = bits - 64;
        let top: BigUint = n >> shift;
        top.to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Natural logarithm of a positive rational (display and fast filtering only).
pub fn ln(r: &Rational) -> f64 {
    debug_assert!(r.is_positive());
    ln_biguint(r.numer().magnitude()) - ln_biguint(r.denom().magnitude())
}

/// Approximate value as `f64` (display and test oracles only).
pub fn to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * ln(&r.abs()).exp()
}

/// Least common multiple of the denominators of `v`.
pub fn denominator_lcm(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a nonzero rational vector to the unique primitive integer vector
/// with the same direction. Returns the integer vector and the positive
/// factor that was applied.
pub fn primitive_integer(v: &[Rational]) -> (Vec<BigInt>, Rational) {
    let lcm = denominator_lcm(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return (ints, Rational::one());
    }
    let out = ints.iter().map(|x| x / &g).collect();
    (out, Rational::new(lcm, g))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn to_rational_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn sign_of(r: &Rational) -> Sign {
    if r.is_zero() {
        Sign::NoSign
    } else if r.is_negative() {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

/// Serde adapters that encode rationals as strings.
pub mod serde_str {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let v = RationalLiteral::deserialize(d)?;
        v.into_rational().map_err(D::Error::custom)
    }

    /// Accepts `"a/b"` strings and bare JSON integers.
    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalLiteral {
        Text(String),
        Int(i64),
    }

    impl RationalLiteral {
        pub(crate) fn into_rational(self) -> Result<Rational, ParseRationalError> {
            match self {
                RationalLiteral::Text(s) => parse(&s),
                RationalLiteral::Int(n) => Ok(int(n)),
            }
        }
    }
}

/// Serde adapters for vectors of rationals.
pub mod serde_vec {
    use super::serde_str::RationalLiteral;
    use super::*;
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<RationalLiteral>::deserialize(d)?;
        v.into_iter().map(|x| x.into_rational().map_err(D::Error::custom)).collect()
    }
}

/// Serde adapters for lists of rational vectors.
pub mod serde_mat {
    use super::serde_str::RationalLiteral;
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(format).collect()).collect();
        serde::Serialize::serialize(&rows, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let m = Vec::<Vec<RationalLiteral>>::deserialize(d)?;
        m.into_iter()
            .map(|row| row.into_iter().map(|x| x.into_rational().map_err(D::Error::custom)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse(" -3 ").unwrap(), int(-3));
        assert_eq!(format(&ratio(-6, 4)), "-3/2");
        assert_eq!(format(&int(7)), "7");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&ratio(1, 3), 4), "0.3333");
        assert_eq!(to_decimal(&ratio(2, 3), 2), "0.67");
        assert_eq!(to_decimal(&ratio(-9, 2), 1), "-4.5");
        assert_eq!(to_decimal(&int(0), 3), "0.000");
        assert_eq!(to_decimal(&ratio(-1, 1000), 2), "0.00");
    }

    #[test]
    fn primitive_scaling() {
        let (v, f) = primitive_integer(&[ratio(1, 2), ratio(-3, 4)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3)]);
        assert_eq!(f, int(4));
    }

    #[test]
    fn log_of_huge_numbers() {
        let n = BigUint::from(10u32).pow(400);
        assert!((ln_biguint(&n) - 400.0 * 10f64.ln()).abs() < 1e-9);
    }
}
