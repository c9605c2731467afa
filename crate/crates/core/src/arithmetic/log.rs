//! Exact logarithms. A [`LogValue`] is `log r` for a positive rational `r`
//! and is stored as `r`; a [`LogCombination`] is `Σ c_i log r_i` with
//! rational `c_i`, compared exactly by clearing denominators and comparing
//! integer powers.

use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LogValue {
    #[serde(with = "rational::serde_str")]
    arg: Rational,
}

impl LogValue {
    /// `log r`; `None` unless `r > 0`.
    pub fn of(r: Rational) -> Option<Self> {
        r.is_positive().then_some(Self { arg: r })
    }

    pub fn of_int(n: i64) -> Option<Self> {
        Self::of(rational::int(n))
    }

    pub fn zero() -> Self {
        Self { arg: Rational::one() }
    }

    /// The positive rational whose logarithm this is.
    pub fn arg(&self) -> &Rational {
        &self.arg
    }

    pub fn times(&self, k: i32) -> Self {
        Self { arg: self.arg.pow(k) }
    }

    pub fn is_zero(&self) -> bool {
        self.arg.is_one()
    }

    pub fn to_f64(&self) -> f64 {
        rational::ln(&self.arg)
    }

    pub fn signum(&self) -> Ordering {
        self.arg.cmp(&Rational::one())
    }
}

impl Ord for LogValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arg.cmp(&other.arg)
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// log a + log b = log(ab)
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for &LogValue {
    type Output = LogValue;
    fn add(self, o: &LogValue) -> LogValue {
        LogValue { arg: &self.arg * &o.arg }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for &LogValue {
    type Output = LogValue;
    fn sub(self, o: &LogValue) -> LogValue {
        LogValue { arg: &self.arg / &o.arg }
    }
}

impl Neg for &LogValue {
    type Output = LogValue;
    fn neg(self) -> LogValue {
        LogValue { arg: self.arg.recip() }
    }
}

impl std::iter::Sum for LogValue {
    fn sum<I: Iterator<Item = LogValue>>(iter: I) -> LogValue {
        iter.fold(LogValue::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "log({}) ≈ {:.12}", rational::format(&self.arg), self.to_f64())
    }
}

/// `Σ c_i log r_i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LogCombination {
    terms: Vec<(Rational, Rational)>,
}

// Relative margin under which the float estimate is trusted.
const FAST_PATH_MARGIN: f64 = 1e-9;

impl LogCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(c: Rational, v: &LogValue) -> Self {
        let mut s = Self::new();
        s.push(c, v);
        s
    }

    pub fn push(&mut self, c: Rational, v: &LogValue) {
        if !c.is_zero() && !v.is_zero() {
            self.terms.push((c, v.arg.clone()));
        }
    }

    pub fn plus(mut self, other: &LogCombination) -> Self {
        self.terms.extend(other.terms.iter().cloned());
        self
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self {
            terms: self.terms.iter().map(|(k, r)| (k * c, r.clone())).collect(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(|(c, r)| rational::to_f64(c) * rational::ln(r)).sum()
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let approx = self.to_f64();
        let scale: f64 = self.terms.iter().map(|(c, r)| (rational::to_f64(c) * rational::ln(r)).abs()).sum();
        if approx.abs() > FAST_PATH_MARGIN * (1.0 + scale) {
            return approx.partial_cmp(&0.0).expect("finite");
        }
        self.exact_signum()
    }

    fn exact_signum(&self) -> Ordering {
        let lcm = self.terms.iter().fold(BigInt::one(), |l, (c, _)| l.lcm(c.denom()));
        let (mut pos, mut neg) = (Rational::one(), Rational::one());
        for (c, r) in &self.terms {
            let k = (c * Rational::from_integer(lcm.clone())).to_integer();
            let e = k.abs().to_u32().expect("log-combination exponent fits in u32");
            let p = Rational::new(r.numer().pow(e), r.denom().pow(e));
            if k.is_positive() {
                pos *= p;
            } else {
                neg *= p;
            }
        }
        pos.cmp(&neg)
    }

    pub fn cmp_exact(&self, other: &LogCombination) -> Ordering {
        self.clone().plus(&other.scaled(&-Rational::one())).signum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn log_value_arithmetic() {
        let a = LogValue::of_int(6).unwrap();
        let b = LogValue::of(ratio(3, 2)).unwrap();
        assert_eq!((&a - &b).arg(), &int(4));
        assert_eq!((&a + &(-&a)), LogValue::zero());
        assert_eq!(a.times(2).arg(), &int(36));
        assert!(LogValue::of_int(0).is_none());
        assert!(b < a);
    }

    #[test]
    fn exact_sign_of_near_cancellation() {
        // 3 log 2 − log 8 = 0, and log(2^40 + 1) − 40 log 2 > 0 by a hair.
        let two = LogValue::of_int(2).unwrap();
        let mut z = LogCombination::term(int(3), &two);
        z.push(int(-1), &LogValue::of_int(8).unwrap());
        assert_eq!(z.signum(), Ordering::Equal);
        let mut w = LogCombination::term(int(1), &LogValue::of_int((1 << 40) + 1).unwrap());
        w.push(int(-40), &two);
        assert_eq!(w.signum(), Ordering::Greater);
        // (1/2) log 4 = log 2
        let h = LogCombination::term(ratio(1, 2), &LogValue::of_int(4).unwrap());
        assert_eq!(h.cmp_exact(&LogCombination::term(int(1), &two)), Ordering::Equal);
    }
}
