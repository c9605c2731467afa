//! Exact divisorial K-stability invariants of toric Q-Fano varieties, and an
//! empirical laboratory for Vojta-type height inequalities over Q.
//!
//! * [`geometry`]: exact rational polytopes (hull, halfspaces, clip, volume,
//!   barycentre).
//! * [`toric`]: complete simplicial fans, divisors, star subdivisions and
//!   log discrepancies.
//! * [`stability`]: volume profiles, the asymptotic volume constant β and
//!   valuative verdicts.
//! * [`arithmetic`]: places of Q, heights and local Weil functions.
//! * [`probe`]: rational-point enumeration and deficit measurements.
//! * [`selftest`]: the golden checks behind `kstab selftest`.

pub mod arithmetic;
pub mod combinatorics;
pub mod geometry;
pub mod linalg;
pub mod probe;
pub mod rational;
pub mod selftest;
pub mod stability;
pub mod toric;

pub use geometry::{GeometryError, Halfspace, Polytope};
pub use rational::Rational;
pub use toric::{Fan, ToricDivisor, ToricError, ToricFano, ToricValuation};
