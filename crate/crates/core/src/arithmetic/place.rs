use super::factor::is_prime_u64;
use super::ArithmeticError;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A place of Q: the archimedean one or a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinite,
    Finite(u64),
}

impl Place {
    pub fn finite(p: u64) -> Result<Place, ArithmeticError> {
        if is_prime_u64(p) {
            Ok(Place::Finite(p))
        } else {
            Err(ArithmeticError::NotPrime(p))
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl std::str::FromStr for Place {
    type Err = ArithmeticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(Place::Infinite),
            t => t
                .parse::<u64>()
                .map_err(|_| ArithmeticError::Malformed(format!("bad place {s:?}")))
                .and_then(Place::finite),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Place::Infinite => s.serialize_str("inf"),
            Place::Finite(p) => s.serialize_u64(*p),
        }
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(p) => Place::finite(p),
            Raw::Str(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn ord_int(p: u64, n: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// `ord_p(r)` for nonzero rational `r`.
pub fn ord(p: u64, r: &Rational) -> i64 {
    i64::from(ord_int(p, r.numer())) - i64::from(ord_int(p, r.denom()))
}

/// `|r|_∞` is the usual absolute value; `|r|_p = p^{−ord_p(r)}`.
pub fn abs_value(v: Place, r: &Rational) -> Result<Rational, ArithmeticError> {
    if r.is_zero() {
        return Err(ArithmeticError::ZeroArgument);
    }
    Ok(match v {
        Place::Infinite => r.abs(),
        Place::Finite(p) => {
            let k = ord(p, r);
            let base = Rational::from_integer(BigInt::from(p));
            if k >= 0 {
                base.pow(-(k as i32))
            } else {
                base.pow((-k) as i32)
            }
        }
    })
}
