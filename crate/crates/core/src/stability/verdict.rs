use super::{beta_via_barycentre, volume_profile, PiecewisePolynomial};
use crate::rational::{self, Rational};
use crate::toric::{primitive_vectors, SingularityReport, SingularityVerdict, ToricError, ToricFano, ToricValuation};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Stated in every report: the valuative criterion needs a dreamy divisor, and
/// toric valuations are dreamy because toric section rings are finitely
/// generated. It is not checked.
pub const DREAMY_ASSUMPTION: &str = "toric valuation assumed dreamy (finitely generated toric filtration); not verified";

const DECIMAL_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    /// `a(X,E) ≤ β − 1`: X is not K-stable.
    Destabilizing,
    /// No conclusion from this valuation.
    NotDestabilizing,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decimals {
    pub beta: String,
    pub log_discrepancy: String,
    pub discrepancy: String,
    pub fujita_margin: String,
}

/// β, discrepancy and margin of `-K_X` along one toric valuation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub u: Vec<i64>,
    #[serde(with = "rational::serde_str")]
    pub beta: Rational,
    #[serde(with = "rational::serde_str")]
    pub log_discrepancy: Rational,
    #[serde(with = "rational::serde_str")]
    pub discrepancy: Rational,
    /// `β − 1 − a`; the valuation destabilizes iff this is ≥ 0.
    #[serde(with = "rational::serde_str")]
    pub fujita_margin: Rational,
    #[serde(with = "rational::serde_str")]
    pub barycentre_check: Rational,
    pub verdict: Verdict,
    /// `β ≥ 1`, reported only when X is known to be canonical.
    pub canonical_criterion: Option<bool>,
    pub singularity: SingularityVerdict,
    pub profile: PiecewisePolynomial,
    pub assumption: String,
    pub decimals: Decimals,
}

/// [`verdict_with`] after classifying the singularities of `x` exactly.
pub fn verdict(x: &ToricFano, v: &ToricValuation) -> Result<StabilityReport, ToricError> {
    let sing = x.exact_singularity_class()?;
    verdict_with(x, v, &sing)
}

pub fn verdict_with(x: &ToricFano, v: &ToricValuation, sing: &SingularityReport) -> Result<StabilityReport, ToricError> {
    let anti = x.anticanonical();
    let profile = volume_profile(x, &anti, v)?;
    let vol = profile.eval(&Rational::zero()).expect("profile starts at 0");
    let beta = profile.integral() / vol;
    let barycentre_check = beta_via_barycentre(x, &anti, v)?;
    if barycentre_check != beta {
        return Err(ToricError::Invariant(format!(
            "β by integration {} differs from β by barycentre {} at u = {:?}",
            rational::format(&beta),
            rational::format(&barycentre_check),
            v.vector()
        )));
    }
    let log_discrepancy = x.log_discrepancy(v)?;
    let discrepancy = &log_discrepancy - Rational::one();
    let fujita_margin = &beta - Rational::one() - &discrepancy;
    let verdict = if fujita_margin.is_negative() {
        Verdict::NotDestabilizing
    } else {
        Verdict::Destabilizing
    };
    let canonical_criterion = sing.is_canonical().then(|| beta >= Rational::one());
    let mut report = StabilityReport {
        u: v.vector().to_vec(),
        beta,
        log_discrepancy,
        discrepancy,
        fujita_margin,
        barycentre_check,
        verdict,
        canonical_criterion,
        singularity: sing.verdict.clone(),
        profile,
        assumption: DREAMY_ASSUMPTION.to_string(),
        decimals: Decimals::default(),
    };
    report.render_decimals(DECIMAL_DIGITS);
    Ok(report)
}

impl StabilityReport {
    /// Rewrites the decimal renderings; exact fields are untouched.
    pub fn render_decimals(&mut self, digits: usize) {
        self.decimals = Decimals {
            beta: rational::to_decimal(&self.beta, digits),
            log_discrepancy: rational::to_decimal(&self.log_discrepancy, digits),
            discrepancy: rational::to_decimal(&self.discrepancy, digits),
            fujita_margin: rational::to_decimal(&self.fujita_margin, digits),
        };
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum SearchOutcome {
    /// At least one valuation certifies that X is not K-stable.
    Destabilized,
    /// Nothing found; a bounded search certifies nothing.
    NoCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub radius: i64,
    pub outcome: SearchOutcome,
    pub singularity: SingularityReport,
    /// Sorted by descending margin, then by `u`.
    pub reports: Vec<StabilityReport>,
}

impl SearchReport {
    pub fn destabilizers(&self) -> impl Iterator<Item = &StabilityReport> {
        self.reports.iter().filter(|r| r.verdict == Verdict::Destabilizing)
    }
}

/// Verdicts for every primitive `u` with max-norm ≤ `radius`, plus every
/// ray. Runs on the current rayon pool; output order does not depend on it.
pub fn search_destabilizer(x: &ToricFano, radius: i64) -> Result<SearchReport, ToricError> {
    if radius < 1 {
        return Err(ToricError::Malformed("search radius must be at least 1".into()));
    }
    let sing = x.exact_singularity_class()?;
    let mut candidates = primitive_vectors(x.dim(), radius);
    candidates.extend(x.fan().rays().iter().cloned());
    candidates.sort();
    candidates.dedup();
    let mut reports = candidates
        .into_par_iter()
        .map(|u| verdict_with(x, &ToricValuation::new(u)?, &sing))
        .collect::<Result<Vec<_>, _>>()?;
    reports.sort_by(|a, b| b.fujita_margin.cmp(&a.fujita_margin).then_with(|| a.u.cmp(&b.u)));
    let outcome = if reports.iter().any(|r| r.verdict == Verdict::Destabilizing) {
        SearchOutcome::Destabilized
    } else {
        SearchOutcome::NoCertificate
    };
    Ok(SearchReport {
        radius,
        outcome,
        singularity: sing,
        reports,
    })
}
