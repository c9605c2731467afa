use super::{Fan, ToricDivisor, ToricError, ToricFano};
use serde::{Deserialize, Serialize};

/// Fan file: `{"dim", "rays", "cones"}` with cones as ray-index lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanJson {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

/// Divisor file: `{"coeffs": ["a/b", ...]}`, one coefficient per ray.
pub type DivisorJson = ToricDivisor;

impl From<&Fan> for FanJson {
    fn from(f: &Fan) -> Self {
        FanJson {
            dim: f.dim(),
            rays: f.rays().to_vec(),
            cones: f.cones().to_vec(),
        }
    }
}

impl TryFrom<FanJson> for Fan {
    type Error = ToricError;

    fn try_from(j: FanJson) -> Result<Self, Self::Error> {
        Fan::new(j.dim, j.rays, j.cones)
    }
}

impl Fan {
    pub fn from_json(s: &str) -> Result<Fan, ToricError> {
        let j: FanJson = serde_json::from_str(s).map_err(|e| ToricError::Malformed(e.to_string()))?;
        Fan::try_from(j)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&FanJson::from(self)).expect("fan serializes")
    }
}

impl ToricFano {
    pub fn from_json(s: &str) -> Result<ToricFano, ToricError> {
        ToricFano::new(Fan::from_json(s)?)
    }
}

impl ToricDivisor {
    pub fn from_json(s: &str) -> Result<ToricDivisor, ToricError> {
        serde_json::from_str(s).map_err(|e| ToricError::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("divisor serializes")
    }
}
