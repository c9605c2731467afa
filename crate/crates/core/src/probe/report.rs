use super::fast::{exact_deficit, WeilArg};
use crate::arithmetic::{LogCombination, Place, ProjectivePoint};
use crate::rational::{self, Rational};
use serde::{Deserialize, Serialize};

/// One evaluated point. Exact values are `Σ_S λ = log(weil_sum_arg)` and
/// `h = log(max_coordinate)`; each deficit is `Σ_S λ − c·h` with `c` from
/// the enclosing summary. The decimal fields are for display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub point: ProjectivePoint,
    pub max_coordinate: u64,
    #[serde(with = "rational::serde_str")]
    pub weil_sum_arg: Rational,
    pub h: String,
    pub weil_sum: String,
    pub deficit_vojta: String,
    pub deficit_general: String,
}

impl PointRecord {
    /// `log(weil_sum_arg) − c·log(max_coordinate)`, exactly.
    pub fn exact_deficit(&self, c: &Rational) -> LogCombination {
        exact_deficit(&WeilArg::Big(self.weil_sum_arg.clone()), self.max_coordinate, c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficitSummary {
    /// `c` in `Σ_S λ − c·h`.
    #[serde(with = "rational::serde_str")]
    pub coefficient: Rational,
    pub max: Option<PointRecord>,
    /// Maximum over points of height at most half the bound.
    pub max_half_bound: Option<PointRecord>,
    pub max_on_candidates: Option<PointRecord>,
    pub max_off_candidates: Option<PointRecord>,
    pub top: Vec<PointRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub enumerated: u64,
    pub on_divisor: u64,
    pub off_divisor: u64,
    pub positive_deficit_vojta: u64,
    /// Off-divisor points whose all-places sum was checked against `deg D · h`.
    pub self_checks_passed: u64,
}

/// Points with `h ∈ [h_bin, h_bin+1)/b` and deficit_vojta in
/// `[deficit_bin, deficit_bin+1)/b`, where `b` is the bins per unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramCell {
    pub h_bin: i64,
    pub deficit_bin: i64,
    pub count: u64,
}

/// A hyperplane carrying at least `cluster_threshold` high-deficit points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub coefficients: Vec<i64>,
    pub high_points: usize,
    /// How many vertices of the divisor arrangement it contains, when the
    /// divisors are hyperplanes.
    pub arrangement_vertices: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub n: usize,
    pub height_bound: i64,
    #[serde(rename = "S")]
    pub places: Vec<Place>,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    #[serde(with = "rational::serde_str")]
    pub beta: Rational,
    pub cluster_threshold: usize,
    pub cluster_height: i64,
    pub machine_integer_path: bool,
    pub counts: Counts,
    pub q99_deficit_vojta: Option<String>,
    /// Points with deficit_vojta above this count toward candidates.
    pub high_threshold: String,
    pub deficit_vojta: DeficitSummary,
    pub deficit_general: DeficitSummary,
    pub histogram_bins_per_unit: i64,
    pub histogram: Vec<HistogramCell>,
    pub arrangement_vertices: Option<Vec<ProjectivePoint>>,
    pub candidates: Vec<Candidate>,
}

impl ProbeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The top records of both deficits, one row per point, in point order.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<&PointRecord> = self.deficit_vojta.top.iter().chain(&self.deficit_general.top).collect();
        rows.sort_by(|a, b| a.point.cmp(&b.point));
        rows.dedup_by(|a, b| a.point == b.point);
        let mut out = String::from("point,max_coordinate,weil_sum_arg,h,weil_sum,deficit_vojta,deficit_general\n");
        for r in rows {
            out.push_str(&format!(
                "\"{}\",{},{},{},{},{},{}\n",
                r.point,
                r.max_coordinate,
                rational::format(&r.weil_sum_arg),
                r.h,
                r.weil_sum,
                r.deficit_vojta,
                r.deficit_general
            ));
        }
        out
    }
}
