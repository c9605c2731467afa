use super::{GeometryError, Halfspace, Polytope};
use crate::rational::{self, Rational};
use serde::{Deserialize, Serialize};

/// One facet in the polytope file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfspaceJson {
    #[serde(with = "rational::serde_vec")]
    pub normal: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    pub offset: Rational,
}

/// Polytope file: `{"dim", "vertices"}` or `{"dim", "facets"}`. When both are
/// given the vertex list wins and the facet list must agree with it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_mat")]
    pub vertices: Option<Vec<Vec<Rational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<HalfspaceJson>>,
}

mod opt_mat {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &Option<Vec<Vec<Rational>>>, s: S) -> Result<S::Ok, S::Error> {
        match m {
            Some(m) => rational::serde_mat::serialize(m, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Vec<Rational>>>, D::Error> {
        rational::serde_mat::deserialize(d).map(Some)
    }
}

impl From<&Polytope> for PolytopeJson {
    fn from(p: &Polytope) -> Self {
        PolytopeJson {
            dim: p.dim(),
            vertices: Some(p.vertices().to_vec()),
            facets: Some(
                p.facets()
                    .iter()
                    .map(|h| HalfspaceJson {
                        normal: h.normal.clone(),
                        offset: h.offset.clone(),
                    })
                    .collect(),
            ),
        }
    }
}

impl TryFrom<PolytopeJson> for Polytope {
    type Error = GeometryError;

    fn try_from(j: PolytopeJson) -> Result<Self, Self::Error> {
        let facets = j
            .facets
            .map(|fs| {
                fs.into_iter()
                    .map(|h| Halfspace::new(h.normal, h.offset))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        let p = match (&j.vertices, &facets) {
            (Some(v), _) if v.is_empty() => Polytope::empty(j.dim),
            (Some(v), _) => Polytope::hull(v)?,
            (None, Some(f)) if f.is_empty() => Polytope::empty(j.dim),
            (None, Some(f)) => Polytope::from_halfspaces(f)?,
            (None, None) => return Err(GeometryError::Malformed("needs \"vertices\" or \"facets\"".into())),
        };
        if p.dim() != j.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: j.dim,
                got: p.dim(),
            });
        }
        if let (Some(_), Some(f)) = (&j.vertices, &facets) {
            let mut canon: Vec<Halfspace> = f.iter().map(Halfspace::canonical).collect();
            canon.sort();
            canon.dedup();
            if canon != p.facets() {
                return Err(GeometryError::Malformed("facet list disagrees with vertex list".into()));
            }
        }
        Ok(p)
    }
}

impl Polytope {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PolytopeJson::from(self)).expect("polytope serializes")
    }

    pub fn from_json(s: &str) -> Result<Polytope, GeometryError> {
        let j: PolytopeJson = serde_json::from_str(s).map_err(|e| GeometryError::Malformed(e.to_string()))?;
        Polytope::try_from(j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn vertex_and_facet_forms() {
        let v = Polytope::from_json(r#"{"dim": 2, "vertices": [["0","0"],["1/2","0"],[0,"1/2"]]}"#).unwrap();
        assert_eq!(v.volume(), ratio(1, 8));
        let f = Polytope::from_json(
            r#"{"dim": 2, "facets": [{"normal": [1,0], "offset": "0"}, {"normal": ["0","1"], "offset": 0},
                {"normal": [-2,-2], "offset": "-1"}]}"#,
        )
        .unwrap();
        assert_eq!(v, f);
        assert_eq!(Polytope::from_json(&v.to_json()).unwrap(), v);
    }

    #[test]
    fn inconsistent_descriptions_rejected() {
        let s = r#"{"dim": 1, "vertices": [["0"],["1"]], "facets": [{"normal": [1], "offset": "0"}]}"#;
        assert!(matches!(Polytope::from_json(s), Err(GeometryError::Malformed(_))));
        assert!(Polytope::from_json(r#"{"dim": 2}"#).is_err());
    }
}
