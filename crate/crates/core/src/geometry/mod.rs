//! Exact convex geometry over the rationals.
//!
//! A [`Polytope`] always carries both descriptions: its vertices and its
//! facet halfspaces, in canonical order, so two polytopes are equal exactly
//! when they are structurally equal. Lower-dimensional polytopes record
//! their affine dimension; their facet list holds the affine-hull equations
//! as opposite halfspace pairs followed by the relative facets.
//!
//! Vertex and facet enumeration are exhaustive over subsets (of facets,
//! respectively points), which costs `C(n, d)` exact solves. That is fine for
//! the d ≤ 4, ≤ 64 constraint inputs this crate deals in; larger inputs are
//! rejected with [`GeometryError::TooLarge`].

mod json;
mod measure;
mod polytope;

pub use json::{HalfspaceJson, PolytopeJson};
pub use polytope::{MAX_FACETS, MAX_HULL_POINTS};

use crate::rational::{self, Rational};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("halfspace normal is the zero vector")]
    ZeroNormal,
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("halfspace intersection is unbounded")]
    Unbounded,
    #[error("halfspace intersection is empty")]
    Empty,
    #[error("polytope has zero volume")]
    ZeroVolume,
    #[error("{what}: {count} exceeds the supported limit of {limit}")]
    TooLarge { what: &'static str, count: usize, limit: usize },
    #[error("malformed polytope: {0}")]
    Malformed(String),
}

/// The closed halfspace `{m : ⟨m, normal⟩ ≥ offset}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Halfspace {
    #[serde(with = "rational::serde_vec")]
    pub normal: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self, GeometryError> {
        if normal.iter().all(Zero::is_zero) {
            return Err(GeometryError::ZeroNormal);
        }
        Ok(Self { normal, offset })
    }

    /// Convenience constructor from integer data.
    pub fn from_ints(normal: &[i64], offset: Rational) -> Result<Self, GeometryError> {
        Self::new(rational::to_rational_vec(normal), offset)
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `⟨p, normal⟩ − offset`; nonnegative exactly on the halfspace.
    pub fn slack(&self, p: &[Rational]) -> Rational {
        rational::dot(p, &self.normal) - &self.offset
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        !self.slack(p).is_negative()
    }

    /// The closed complement `{m : ⟨m, normal⟩ ≤ offset}`.
    pub fn complement(&self) -> Halfspace {
        Halfspace {
            normal: self.normal.iter().map(|x| -x).collect(),
            offset: -self.offset.clone(),
        }
    }

    /// Same halfspace with the normal scaled to a primitive integer vector.
    pub fn canonical(&self) -> Halfspace {
        let (ints, factor) = rational::primitive_integer(&self.normal);
        Halfspace {
            normal: ints.into_iter().map(rational::from_bigint).collect(),
            offset: &self.offset * factor,
        }
    }
}

/// Bounded convex rational polytope with consistent vertex and facet lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    facets: Vec<Halfspace>,
    affine_dim: Option<usize>,
}

impl Polytope {
    /// The empty polytope in ambient dimension `dim`.
    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            vertices: Vec::new(),
            facets: Vec::new(),
            affine_dim: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    /// Facet halfspaces with primitive integer normals, in lexicographic order.
    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    /// Dimension of the affine hull; `None` for the empty polytope.
    pub fn affine_dim(&self) -> Option<usize> {
        self.affine_dim
    }

    pub fn is_empty(&self) -> bool {
        self.affine_dim.is_none()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == Some(self.dim)
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        !self.is_empty() && self.facets.iter().all(|h| h.contains(p))
    }

    /// Image under `m ↦ m + v`.
    pub fn translate(&self, v: &[Rational]) -> Result<Polytope, GeometryError> {
        if v.len() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        let pts: Vec<_> = self.vertices.iter().map(|p| crate::linalg::add(p, v)).collect();
        Polytope::hull(&pts)
    }

    /// Exact minimum and maximum of `⟨m, u⟩` over the polytope.
    pub fn support_extrema(&self, u: &[Rational]) -> Result<(Rational, Rational), GeometryError> {
        if u.len() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                got: u.len(),
            });
        }
        if u.iter().all(Zero::is_zero) {
            return Err(GeometryError::ZeroDirection);
        }
        let mut values = self.vertices.iter().map(|p| rational::dot(p, u));
        let first = values.next().ok_or(GeometryError::EmptyInput)?;
        Ok(values.fold((first.clone(), first), |(lo, hi), x| {
            (if x < lo { x.clone() } else { lo }, if x > hi { x } else { hi })
        }))
    }
}
