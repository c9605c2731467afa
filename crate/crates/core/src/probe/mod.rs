//! Rational points of bounded height on `P^n` against Vojta-type
//! inequalities for a divisor `D = D_1 + … + D_q`.
//!
//! For each point off `D` the probe computes `Σ_{v∈S} λ_{D,v}(x)` and two
//! deficits, `Σ_S λ − (n+1+ε)·h(x)` and `Σ_S λ − (1/β+ε)(n+1)·h(x)`. Positive
//! values of the first are expected only on a proper closed subset; the
//! run looks for hyperplanes that collect many high-deficit points.

mod enumerate;
mod evaluate;
mod fast;
mod report;
mod run;
mod scenario;
mod stats;

pub use enumerate::enumerate_points;
pub use evaluate::{evaluate, DeficitRecord};
pub use report::{Candidate, Counts, DeficitSummary, HistogramCell, PointRecord, ProbeReport};
pub use run::{run, ProbeOptions, RESERVE};
pub use scenario::{Scenario, DEFAULT_CLUSTER_HEIGHT, DEFAULT_TOP_K, MAX_AMBIENT_DIM};

use crate::arithmetic::ArithmeticError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProbeError {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("hypotheses not satisfied: {0}")]
    Hypothesis(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}
