use super::ArithmeticError;
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A rational point of `P^n` in its canonical integer form: coprime
/// coordinates with the first nonzero one positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint {
    coords: Vec<i64>,
}

impl ProjectivePoint {
    /// Canonicalizes any nonzero integer vector.
    pub fn new(coords: Vec<i64>) -> Result<Self, ArithmeticError> {
        if coords.is_empty() {
            return Err(ArithmeticError::Malformed("point has no coordinates".into()));
        }
        let g = coords.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g == 0 {
            return Err(ArithmeticError::ZeroPoint);
        }
        let lead = *coords.iter().find(|&&x| x != 0).expect("nonzero");
        let g = if lead < 0 { -g } else { g };
        Ok(Self {
            coords: coords.into_iter().map(|x| x / g).collect(),
        })
    }

    /// Trusts the caller that `coords` is already canonical.
    pub(crate) fn from_canonical(coords: Vec<i64>) -> Self {
        debug_assert_eq!(ProjectivePoint::new(coords.clone()).map(|p| p.coords), Ok(coords.clone()));
        Self { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// `n` for a point of `P^n`.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn max_abs(&self) -> u64 {
        self.coords.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl std::str::FromStr for ProjectivePoint {
    type Err = ArithmeticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| ArithmeticError::Malformed(format!("point {s:?} is not of the form [a:b:...]")))?;
        let coords = inner
            .split(':')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| ArithmeticError::Malformed(format!("bad coordinate {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        ProjectivePoint::new(coords)
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ProjectivePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
