use super::ProbeError;
use crate::arithmetic::{general_position, ArithmeticError, Hypersurface, Place};
use crate::rational::{self, Rational};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

pub const MAX_AMBIENT_DIM: usize = 6;
pub const DEFAULT_TOP_K: usize = 20;
pub const DEFAULT_CLUSTER_HEIGHT: i64 = 3;

fn default_true() -> bool {
    true
}

fn default_top_k() -> usize {
    DEFAULT_TOP_K
}

fn default_cluster_height() -> i64 {
    DEFAULT_CLUSTER_HEIGHT
}

/// A probe run: divisors `D_1..D_q` on `P^n`, the places `S`, `ε`, the β of
/// the governing class, and the height bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub n: usize,
    pub divisors: Vec<Hypersurface>,
    #[serde(rename = "S")]
    pub places: Vec<Place>,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    #[serde(with = "rational::serde_str")]
    pub beta: Rational,
    pub height_bound: i64,
    /// Minimum number of high-deficit points on a hyperplane for it to be
    /// reported as an exceptional candidate.
    pub cluster_threshold: usize,
    /// Whether the divisors are claimed to be linearly equivalent and in
    /// general position; checked by [`Scenario::validate`].
    #[serde(default = "default_true")]
    pub claims_hypotheses: bool,
    #[serde(default = "default_top_k")]
    pub top_k: usize,
    /// Candidate hyperplanes have coprime integer coefficients of absolute
    /// value at most this.
    #[serde(default = "default_cluster_height")]
    pub cluster_height: i64,
}

impl Scenario {
    pub fn from_json(s: &str) -> Result<Scenario, ProbeError> {
        serde_json::from_str(s).map_err(|e| ProbeError::InvalidScenario(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Structural checks, then the claimed hypotheses unless `check_hypotheses` is false.
    pub fn validate(&self, check_hypotheses: bool) -> Result<(), ProbeError> {
        let bad = |m: String| Err(ProbeError::InvalidScenario(m));
        if self.n == 0 || self.n > MAX_AMBIENT_DIM {
            return bad(format!("ambient dimension must be between 1 and {MAX_AMBIENT_DIM}"));
        }
        if self.divisors.is_empty() {
            return bad("at least one divisor is required".into());
        }
        if let Some(d) = self.divisors.iter().find(|d| d.vars() != self.n + 1) {
            return bad(format!("divisor in {} variables on P^{}", d.vars(), self.n));
        }
        let mut places = self.places.clone();
        places.sort();
        places.dedup();
        if places.len() != self.places.len() {
            return bad("S lists a place twice".into());
        }
        if !self.epsilon.is_positive() {
            return bad("epsilon must be positive".into());
        }
        if !self.beta.is_positive() {
            return bad("beta must be positive".into());
        }
        if self.height_bound < 1 || self.height_bound > 1 << 20 {
            return bad("height_bound must be between 1 and 2^20".into());
        }
        if self.cluster_height < 1 {
            return bad("cluster_height must be at least 1".into());
        }
        if self.claims_hypotheses && check_hypotheses {
            let e = self.divisors[0].degree();
            if self.divisors.iter().any(|d| d.degree() != e) {
                return Err(ProbeError::Hypothesis(
                    "divisors have different degrees, so are not linearly equivalent".into(),
                ));
            }
            match general_position(&self.divisors, self.n) {
                Ok(true) => {}
                Ok(false) => return Err(ProbeError::Hypothesis("divisors do not intersect properly".into())),
                Err(ArithmeticError::Unsupported(m)) => {
                    return Err(ProbeError::Hypothesis(format!("cannot verify proper intersection: {m}")))
                }
                Err(e) => return Err(e.into()),
            }
        }
        Ok(())
    }

    pub fn total_degree(&self) -> u32 {
        self.divisors.iter().map(|d| d.degree()).sum()
    }

    /// `n + 1 + ε`: deficit_vojta = Σ_S λ − (n+1+ε)·h.
    pub fn vojta_coefficient(&self) -> Rational {
        rational::int(self.n as i64 + 1) + &self.epsilon
    }

    /// `(1/β + ε)(n+1)`: deficit_general = Σ_S λ − (1/β+ε)·h_{−K}.
    pub fn general_coefficient(&self) -> Rational {
        (self.beta.recip() + &self.epsilon) * rational::int(self.n as i64 + 1)
    }
}


#[cfg(test)]
mod tests {
    use super::tests_support::THREE_LINES;
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn parses_and_validates() {
        let s = Scenario::from_json(THREE_LINES).unwrap();
        s.validate(true).unwrap();
        assert_eq!(s.top_k, DEFAULT_TOP_K);
        assert_eq!(s.vojta_coefficient(), ratio(31, 10));
        assert_eq!(s.general_coefficient(), ratio(33, 10));
        assert_eq!(Scenario::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn rejects_concurrent_lines_when_claimed() {
        let mut s = Scenario::from_json(THREE_LINES).unwrap();
        s.divisors[2] = Hypersurface::linear(&[1, 1, 0]).unwrap();
        assert!(matches!(s.validate(true), Err(ProbeError::Hypothesis(_))));
        assert!(s.validate(false).is_ok());
        s.claims_hypotheses = false;
        assert!(s.validate(true).is_ok());
    }

    #[test]
    fn structural_errors() {
        let mut s = Scenario::from_json(THREE_LINES).unwrap();
        s.epsilon = ratio(0, 1);
        assert!(matches!(s.validate(false), Err(ProbeError::InvalidScenario(_))));
        assert!(Scenario::from_json(&THREE_LINES.replace("\"inf\"", "4")).is_err());
    }
}
