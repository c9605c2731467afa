use super::{Fan, ToricError};
use crate::geometry::{GeometryError, Halfspace, Polytope};
use crate::rational::{self, Rational};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

/// `Σ a_ρ D_ρ`, one rational coefficient per ray of the fan it lives on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricDivisor {
    #[serde(with = "rational::serde_vec")]
    pub coeffs: Vec<Rational>,
}

impl ToricDivisor {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(rational::to_rational_vec(coeffs))
    }

    pub fn scaled(&self, lambda: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * lambda).collect())
    }

    pub fn add(&self, other: &ToricDivisor) -> Self {
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }
}

/// A complete simplicial fan whose anticanonical divisor (all coefficients
/// one) is ample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricFano {
    fan: Fan,
}

impl ToricFano {
    pub fn new(fan: Fan) -> Result<Self, ToricError> {
        let anti = ToricDivisor::new(vec![Rational::one(); fan.rays().len()]);
        if let Some(wall) = convexity_failure(&fan, &anti, true) {
            return Err(ToricError::NotAmple { wall });
        }
        Ok(Self { fan })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn dim(&self) -> usize {
        self.fan.dim()
    }

    /// `−K_X = Σ D_ρ`.
    pub fn anticanonical(&self) -> ToricDivisor {
        ToricDivisor::new(vec![Rational::one(); self.fan.rays().len()])
    }

    fn check_len(&self, d: &ToricDivisor) -> Result<(), ToricError> {
        let expected = self.fan.rays().len();
        if d.coeffs.len() != expected {
            return Err(ToricError::CoefficientMismatch {
                expected,
                got: d.coeffs.len(),
            });
        }
        Ok(())
    }

    /// Strict convexity of the support function across every wall.
    pub fn is_ample(&self, d: &ToricDivisor) -> Result<bool, ToricError> {
        self.check_len(d)?;
        Ok(convexity_failure(&self.fan, d, true).is_none())
    }

    pub fn check_nef(&self, d: &ToricDivisor) -> Result<(), ToricError> {
        self.check_len(d)?;
        match convexity_failure(&self.fan, d, false) {
            Some(wall) => Err(ToricError::NotNef { wall }),
            None => Ok(()),
        }
    }

    /// `P(D) = {m : ⟨m, u_ρ⟩ ≥ −a_ρ}`; possibly empty or lower-dimensional.
    pub fn section_polytope(&self, d: &ToricDivisor) -> Result<Polytope, ToricError> {
        self.check_len(d)?;
        let hs: Vec<Halfspace> = self
            .fan
            .rays()
            .iter()
            .zip(&d.coeffs)
            .map(|(r, a)| Halfspace::from_ints(r, -a.clone()))
            .collect::<Result<_, _>>()?;
        match Polytope::from_halfspaces(&hs) {
            Ok(p) => Ok(p),
            Err(GeometryError::Empty) => Ok(Polytope::empty(self.dim())),
            Err(e) => Err(e.into()),
        }
    }

    /// `Vol(D) = d! · vol(P(D))`.
    pub fn volume(&self, d: &ToricDivisor) -> Result<Rational, ToricError> {
        let p = self.section_polytope(d)?;
        let fact: i64 = (1..=self.dim() as i64).product();
        Ok(p.volume() * rational::int(fact))
    }

    /// Coefficient of the divisor of `u` in the pullback of `d` to the star
    /// subdivision at `u`: `a_u = −ψ_D(u)`, with `ψ_D` linear on cones and
    /// `ψ_D(u_ρ) = −a_ρ`.
    pub fn pullback_coefficient(&self, d: &ToricDivisor, u: &[i64]) -> Result<Rational, ToricError> {
        self.check_len(d)?;
        if u.iter().all(|&x| x == 0) {
            return Err(ToricError::ZeroVector);
        }
        self.fan.piecewise_linear(&d.coeffs, &rational::to_rational_vec(u))
    }

    /// Trace of the pullback of `d` on the star subdivision at `u`: the model
    /// fan and the divisor on it. The identity when `u` is already a ray.
    pub fn birational_trace(&self, d: &ToricDivisor, u: &[i64]) -> Result<(Fan, ToricDivisor), ToricError> {
        let model = self.fan.star_subdivide(u)?;
        if model.rays().len() == self.fan.rays().len() {
            return Ok((model, d.clone()));
        }
        let mut coeffs = d.coeffs.clone();
        coeffs.push(self.pullback_coefficient(d, u)?);
        Ok((model, ToricDivisor::new(coeffs)))
    }

    /// Image under a unimodular integer matrix.
    pub fn transform(&self, m: &[Vec<i64>]) -> Result<ToricFano, ToricError> {
        ToricFano::new(self.fan.transform(m)?)
    }
}

/// First wall across which the support function of `d` fails to be
/// (strictly, if `strict`) convex.
fn convexity_failure(fan: &Fan, d: &ToricDivisor, strict: bool) -> Option<Vec<usize>> {
    for wall in fan.walls() {
        for side in 0..2 {
            let m = fan.cone_character(wall.cones[side], &d.coeffs);
            let far = wall.opposite[1 - side];
            let slack = rational::dot(&m, &rational::to_rational_vec(&fan.rays()[far])) + &d.coeffs[far];
            let ok = if strict { slack.is_positive() } else { !slack.is_negative() };
            if !ok {
                return Some(wall.rays.clone());
            }
        }
    }
    None
}
