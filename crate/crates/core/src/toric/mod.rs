//! Toric Q-Fano varieties given by complete simplicial fans.
//!
//! A divisor `Σ a_ρ D_ρ` is a coefficient per ray; its section polytope is
//! `{m : ⟨m, u_ρ⟩ ≥ −a_ρ}` and its volume is `d!` times the Euclidean volume
//! of that polytope. A primitive lattice vector `u` names the toric
//! valuation whose divisor appears on the star subdivision at `u`; every
//! such divisor is taken to be dreamy (toric section rings are finitely
//! generated).

mod discrepancy;
mod fan;
pub mod fixtures;
mod json;
mod variety;

pub use discrepancy::{SingularityReport, SingularityVerdict, ToricValuation};
pub use fan::{primitive_vectors, Fan, Wall};
pub use json::{DivisorJson, FanJson};
pub use variety::{ToricDivisor, ToricFano};

use crate::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ToricError {
    #[error("malformed fan: {0}")]
    Malformed(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector {0:?} is not primitive")]
    NotPrimitive(Vec<i64>),
    #[error("zero vector")]
    ZeroVector,
    #[error("cone {cone} has {rays} rays in dimension {dim}; only simplicial maximal cones are supported")]
    NotSimplicial { cone: usize, rays: usize, dim: usize },
    #[error("rays of cone {cone} are linearly dependent")]
    DependentRays { cone: usize },
    #[error("fan is not complete: {0}")]
    NotComplete(String),
    #[error("cones do not meet in common faces: {0}")]
    ImproperIntersection(String),
    #[error("-K is not ample: support function is not strictly convex across the wall {wall:?}")]
    NotAmple { wall: Vec<usize> },
    #[error("divisor is not nef across the wall {wall:?}")]
    NotNef { wall: Vec<usize> },
    #[error("divisor has {got} coefficients but the fan has {expected} rays")]
    CoefficientMismatch { expected: usize, got: usize },
    #[error("vector lies in no maximal cone")]
    NotInSupport,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
