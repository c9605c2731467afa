//! Log discrepancies of toric valuations.
//!
//! For the valuation of a primitive vector `u`, the log discrepancy is
//! `A(u) = κ(u)` where κ is the piecewise-linear function equal to 1 on
//! every ray. On a simplicial cone every lattice point is a nonnegative
//! integer combination of rays plus a point of the half-open fundamental
//! parallelepiped, so the minimum discrepancy is decided by those finitely
//! many points.

use super::fan::check_primitive;
use super::{primitive_vectors, Fan, ToricError, ToricFano};
use crate::rational::{self, Rational};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Divisorial valuation given by a primitive lattice vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ToricValuation {
    u: Vec<i64>,
}

impl ToricValuation {
    pub fn new(u: Vec<i64>) -> Result<Self, ToricError> {
        check_primitive(&u, u.len())?;
        Ok(Self { u })
    }

    pub fn vector(&self) -> &[i64] {
        &self.u
    }

    pub fn as_rational(&self) -> Vec<Rational> {
        rational::to_rational_vec(&self.u)
    }
}

impl Fan {
    /// `κ(u)` for any nonzero lattice vector (not necessarily primitive).
    pub fn log_discrepancy_at(&self, u: &[i64]) -> Result<Rational, ToricError> {
        if u.iter().all(|&x| x == 0) {
            return Err(ToricError::ZeroVector);
        }
        let ones = vec![Rational::one(); self.rays().len()];
        self.piecewise_linear(&ones, &rational::to_rational_vec(u))
    }

    /// Nonzero lattice points of the half-open fundamental parallelepiped of
    /// cone `c`, generated as the finite group `Z^d / (ray lattice)`.
    pub fn fundamental_points(&self, c: usize) -> Vec<Vec<i64>> {
        let d = self.dim();
        let reduce = |p: &[i64]| -> Vec<i64> {
            let lam = self.coordinates_in(c, &rational::to_rational_vec(p));
            let frac: Vec<Rational> = lam.iter().map(|l| l - l.floor()).collect();
            (0..d)
                .map(|j| {
                    let x: Rational = self.cones()[c]
                        .iter()
                        .zip(&frac)
                        .map(|(&i, f)| f * rational::int(self.rays()[i][j]))
                        .sum();
                    debug_assert!(x.is_integer());
                    i64::try_from(x.to_integer()).expect("parallelepiped point fits in i64")
                })
                .collect()
        };
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier = vec![vec![0i64; d]];
        seen.insert(vec![0; d]);
        while let Some(p) = frontier.pop() {
            for j in 0..d {
                let mut q = p.clone();
                q[j] += 1;
                let q = reduce(&q);
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        seen.into_iter().filter(|p| p.iter().any(|&x| x != 0)).collect()
    }
}

impl ToricFano {
    /// `A(u) = κ(u)`; the log discrepancy of the divisor of `v` over X.
    pub fn log_discrepancy(&self, v: &ToricValuation) -> Result<Rational, ToricError> {
        self.fan().log_discrepancy_at(v.vector())
    }

    /// `a(X, E_v) = A(u) − 1`.
    pub fn discrepancy(&self, v: &ToricValuation) -> Result<Rational, ToricError> {
        Ok(self.log_discrepancy(v)? - Rational::one())
    }

    /// Scans primitive vectors of max-norm ≤ `radius` and reports the
    /// smallest discrepancy, plus whether the scan covered every
    /// fundamental-parallelepiped point (which makes the verdict exact).
    pub fn singularity_class(&self, radius: i64) -> Result<SingularityReport, ToricError> {
        if radius < 1 {
            return Err(ToricError::Malformed("search radius must be at least 1".into()));
        }
        let mut min: Option<(Rational, Vec<i64>)> = None;
        let candidates = primitive_vectors(self.dim(), radius);
        for u in &candidates {
            let a = self.fan().log_discrepancy_at(u)? - Rational::one();
            if min.as_ref().is_none_or(|(m, _)| a < *m) {
                min = Some((a, u.clone()));
            }
        }
        let (min_discrepancy, minimizer) = min.expect("radius ≥ 1 yields candidates");
        let fundamental_radius = (0..self.fan().cones().len())
            .flat_map(|c| self.fan().fundamental_points(c))
            .map(|p| p.iter().map(|x| x.abs()).max().unwrap_or(0))
            .max()
            .unwrap_or(0);
        let covered = fundamental_radius <= radius;
        let verdict = if min_discrepancy <= -Rational::one() {
            SingularityVerdict::NotLogTerminal
        } else if min_discrepancy.is_negative() {
            SingularityVerdict::LogTerminal
        } else if covered {
            SingularityVerdict::Canonical
        } else {
            SingularityVerdict::Indeterminate { bound: radius }
        };
        Ok(SingularityReport {
            radius,
            scanned: candidates.len(),
            min_discrepancy,
            minimizer,
            fundamental_radius,
            fundamental_points_covered: covered,
            verdict,
        })
    }

    /// Singularity class decided exactly, scanning as far as the
    /// fundamental parallelepipeds reach.
    pub fn exact_singularity_class(&self) -> Result<SingularityReport, ToricError> {
        let reach = (0..self.fan().cones().len())
            .flat_map(|c| self.fan().fundamental_points(c))
            .map(|p| p.iter().map(|x| x.abs()).max().unwrap_or(0))
            .max()
            .unwrap_or(0);
        self.singularity_class(reach.max(1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE", tag = "class")]
pub enum SingularityVerdict {
    Canonical,
    LogTerminal,
    NotLogTerminal,
    /// No negative discrepancy within `bound`, but the scan did not reach
    /// every fundamental-parallelepiped point.
    Indeterminate {
        bound: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub radius: i64,
    pub scanned: usize,
    #[serde(with = "rational::serde_str")]
    pub min_discrepancy: Rational,
    pub minimizer: Vec<i64>,
    pub fundamental_radius: i64,
    pub fundamental_points_covered: bool,
    pub verdict: SingularityVerdict,
}

impl SingularityReport {
    pub fn is_canonical(&self) -> bool {
        self.verdict == SingularityVerdict::Canonical
    }
}

impl std::fmt::Display for SingularityVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingularityVerdict::Canonical => write!(f, "CANONICAL"),
            SingularityVerdict::LogTerminal => write!(f, "LOG-TERMINAL"),
            SingularityVerdict::NotLogTerminal => write!(f, "NOT-LOG-TERMINAL"),
            SingularityVerdict::Indeterminate { bound } => write!(f, "INDETERMINATE({bound})"),
        }
    }
}
