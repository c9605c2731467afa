use super::{ProbeError, Scenario};
use crate::arithmetic::{global_weil_sum, height, local_weil, LogCombination, LogValue, ProjectivePoint};
use crate::rational::Rational;
use num_traits::{One, Zero};

/// Both sides of the inequalities at one point, exactly. Points on the
/// divisor carry no values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeficitRecord {
    pub point: ProjectivePoint,
    pub h: LogValue,
    pub on_divisor: bool,
    /// `Σ_{v∈S} λ_{D,v}(x)`.
    pub weil_sum_s: Option<LogValue>,
    /// `Σ_S λ + h_K − ε·h`.
    pub deficit_vojta: Option<LogCombination>,
    /// `Σ_S λ − (1/β + ε)·h_{−K}`.
    pub deficit_general: Option<LogCombination>,
}

/// Exact evaluation through the arithmetic module. Also checks that the
/// sum of `λ_{D_i}` over all places is `deg D_i · h(x)` for each divisor.
pub fn evaluate(s: &Scenario, x: &ProjectivePoint) -> Result<DeficitRecord, ProbeError> {
    if x.coords().len() != s.n + 1 {
        return Err(ProbeError::InvalidScenario(format!("point {x} is not in P^{}", s.n)));
    }
    let h = height(x)?;
    let on_divisor = s.divisors.iter().any(|d| d.eval(x.coords()).is_zero());
    if on_divisor {
        return Ok(DeficitRecord {
            point: x.clone(),
            h,
            on_divisor,
            weil_sum_s: None,
            deficit_vojta: None,
            deficit_general: None,
        });
    }
    let mut w = LogValue::zero();
    for d in &s.divisors {
        for &v in &s.places {
            w = &w + &local_weil(d, v, x)?;
        }
        if global_weil_sum(d, x)? != h.times(d.degree() as i32) {
            return Err(ProbeError::Invariant(format!(
                "global Weil sum of a degree-{} divisor at {x} is not deg·h",
                d.degree()
            )));
        }
    }
    let deficit = |c: Rational| {
        let mut z = LogCombination::term(Rational::one(), &w);
        z.push(-c, &h);
        z
    };
    Ok(DeficitRecord {
        point: x.clone(),
        deficit_vojta: Some(deficit(s.vojta_coefficient())),
        deficit_general: Some(deficit(s.general_coefficient())),
        weil_sum_s: Some(w),
        h,
        on_divisor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use std::cmp::Ordering;

    fn scenario() -> Scenario {
        Scenario::from_json(super::super::scenario::tests_support::THREE_LINES).unwrap()
    }

    fn pt(c: &[i64]) -> ProjectivePoint {
        ProjectivePoint::new(c.to_vec()).unwrap()
    }

    #[test]
    fn unit_point_has_zero_deficits() {
        let r = evaluate(&scenario(), &pt(&[1, 1, 1])).unwrap();
        assert!(r.h.is_zero());
        assert!(r.weil_sum_s.unwrap().is_zero());
        assert_eq!(r.deficit_vojta.unwrap().signum(), Ordering::Equal);
        assert_eq!(r.deficit_general.unwrap().signum(), Ordering::Equal);
    }

    #[test]
    fn coordinate_point_is_on_divisor() {
        let r = evaluate(&scenario(), &pt(&[1, 0, 0])).unwrap();
        assert!(r.on_divisor && r.weil_sum_s.is_none() && r.deficit_general.is_none());
    }

    #[test]
    fn worked_point() {
        let r = evaluate(&scenario(), &pt(&[1, 2, 3])).unwrap();
        let three = LogValue::of_int(3).unwrap();
        // 3 log 3 − log 6
        assert_eq!(r.weil_sum_s.clone().unwrap().arg(), &ratio(27, 6));
        let mut expected = LogCombination::term(int(3), &three);
        expected.push(int(-1), &LogValue::of_int(6).unwrap());
        expected.push(-ratio(11, 10) * int(3), &three);
        assert_eq!(r.deficit_general.unwrap().cmp_exact(&expected), Ordering::Equal);
    }
}
