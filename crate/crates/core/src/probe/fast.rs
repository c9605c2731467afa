//! Machine-integer evaluation of a scenario at one point.
//!
//! Used when every `|F_i(x)|` and their product, and `H^{deg D}`, provably
//! fit in `u128`; otherwise each point goes through the exact generic path.
//! The float deficits only order points and fill histograms; every stored
//! extreme keeps its exact `(W, M)` pair, and near-ties are settled exactly.

use super::evaluate::evaluate;
use super::{ProbeError, Scenario};
use crate::arithmetic::{factor, LogCombination, LogValue, ProjectivePoint};
use crate::rational::{self, Rational};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use std::cmp::Ordering;

const SPF_LIMIT: u128 = 1 << 22;
const LN_TABLE_LIMIT: usize = 1 << 22;
const FAST_BITS: u32 = 120;

/// `exp(Σ_S λ)`, a positive rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeilArg {
    Small { num: u128, den: u128 },
    Big(Rational),
}

impl WeilArg {
    pub fn to_rational(&self) -> Rational {
        match self {
            WeilArg::Small { num, den } => Rational::new(BigInt::from(*num), BigInt::from(*den)),
            WeilArg::Big(r) => r.clone(),
        }
    }
}

/// One off-divisor point.
#[derive(Debug, Clone)]
pub struct PointEval {
    /// `M = max |x_i|`, so `h = log M`.
    pub m: u64,
    pub ln_m: f64,
    pub w: WeilArg,
    pub ln_w: f64,
    pub vojta: f64,
    pub general: f64,
}

struct Form {
    monomials: Vec<(Vec<u32>, i128)>,
}

impl Form {
    fn eval(&self, x: &[i64]) -> i128 {
        let mut total = 0i128;
        for (exps, c) in &self.monomials {
            let mut t = *c;
            for (&e, &xi) in exps.iter().zip(x) {
                for _ in 0..e {
                    t *= i128::from(xi);
                }
            }
            total += t;
        }
        total
    }
}

pub struct Evaluator {
    scenario: Scenario,
    forms: Vec<Form>,
    s_primes: Vec<u64>,
    has_inf: bool,
    total_degree: u32,
    c_vojta: f64,
    c_general: f64,
    fast: bool,
    ln_table: Vec<f64>,
    spf: Vec<u32>,
}

fn spf_table(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

impl Evaluator {
    pub fn new(s: &Scenario) -> Evaluator {
        let h = s.height_bound as u128;
        let mut fast = true;
        let mut product_bits = 0u32;
        let mut max_value: u128 = 0;
        for d in &s.divisors {
            let coeff_sum: u128 = d.monomials().iter().map(|m| m.coeff.unsigned_abs() as u128).sum();
            let bits = 128 - coeff_sum.leading_zeros() + d.degree() * (128 - h.leading_zeros());
            if bits > 62 {
                fast = false;
            } else {
                max_value = max_value.max(coeff_sum * h.pow(d.degree()));
            }
            product_bits += bits;
        }
        let total_degree = s.total_degree();
        if product_bits > FAST_BITS || total_degree * (128 - h.leading_zeros()) > FAST_BITS {
            fast = false;
        }
        let forms = s
            .divisors
            .iter()
            .map(|d| Form {
                monomials: d.monomials().iter().map(|m| (m.exps.clone(), i128::from(m.coeff))).collect(),
            })
            .collect();
        let spf = if fast && max_value <= SPF_LIMIT {
            spf_table(max_value as usize)
        } else {
            Vec::new()
        };
        let ln_len = if fast {
            (max_value.max(h) as usize + 1).min(LN_TABLE_LIMIT)
        } else {
            h as usize + 1
        };
        let ln_table = (0..ln_len)
            .map(|i| if i == 0 { f64::NEG_INFINITY } else { (i as f64).ln() })
            .collect();
        Evaluator {
            scenario: s.clone(),
            forms,
            s_primes: s
                .places
                .iter()
                .filter_map(|p| match p {
                    crate::arithmetic::Place::Finite(p) => Some(*p),
                    crate::arithmetic::Place::Infinite => None,
                })
                .collect(),
            has_inf: s.places.iter().any(|p| p.is_infinite()),
            total_degree,
            c_vojta: rational::to_f64(&s.vojta_coefficient()),
            c_general: rational::to_f64(&s.general_coefficient()),
            fast,
            ln_table,
            spf,
        }
    }

    pub fn is_fast(&self) -> bool {
        self.fast
    }

    fn ln(&self, v: u128) -> f64 {
        if v < self.ln_table.len() as u128 {
            self.ln_table[v as usize]
        } else {
            (v as f64).ln()
        }
    }

    /// `None` on the divisor. `Err` only when the all-places identity fails.
    pub fn eval(&self, x: &[i64]) -> Result<Option<PointEval>, ProbeError> {
        if !self.fast {
            return self.eval_generic(x);
        }
        let m = x.iter().map(|v| v.unsigned_abs()).max().expect("nonempty");
        let mut values = [0u128; 16];
        let q = self.forms.len();
        let mut spill = Vec::new();
        let vals: &mut [u128] = if q <= 16 {
            &mut values[..q]
        } else {
            spill.resize(q, 0);
            &mut spill
        };
        for (slot, f) in vals.iter_mut().zip(&self.forms) {
            let v = f.eval(x);
            if v == 0 {
                return Ok(None);
            }
            *slot = v.unsigned_abs();
        }
        let mut s_part: u128 = 1;
        let mut rest: u128 = 1;
        let mut ln_rest = 0.0;
        let mut ln_s = 0.0;
        for &a in vals.iter() {
            let mut r = a;
            for &p in &self.s_primes {
                let p = p as u128;
                while r % p == 0 {
                    r /= p;
                }
            }
            ln_rest += self.ln(r);
            ln_s += self.ln(a / r);
            rest *= r;
            s_part *= a / r;
        }
        self.check_all_places(vals)?;
        let ln_m = self.ln(m as u128);
        let (w, ln_w) = if self.has_inf {
            let num = (m as u128).pow(self.total_degree);
            (WeilArg::Small { num, den: rest }, f64::from(self.total_degree) * ln_m - ln_rest)
        } else {
            (WeilArg::Small { num: s_part, den: 1 }, ln_s)
        };
        Ok(Some(PointEval {
            m,
            ln_m,
            w,
            ln_w,
            vojta: ln_w - self.c_vojta * ln_m,
            general: ln_w - self.c_general * ln_m,
        }))
    }

    /// `Σ_v λ_{D,v} = deg D · h`: the archimedean term `M^E / Π|F_i|` times the
    /// finite terms `p^{ord_p Π F_i}` must be `M^E`, i.e. the prime powers
    /// found by factoring each value multiply back to that value.
    fn check_all_places(&self, vals: &[u128]) -> Result<(), ProbeError> {
        for &a in vals {
            let mut rebuilt: u128 = 1;
            if (a as usize) < self.spf.len() {
                let mut r = a as usize;
                while r > 1 {
                    let p = self.spf[r] as usize;
                    r /= p;
                    rebuilt *= p as u128;
                }
            } else {
                for (p, k) in factor::factorize(&BigUint::from(a)) {
                    rebuilt *= p.to_u128().expect("factor of a u128").pow(k);
                }
            }
            if rebuilt != a {
                return Err(ProbeError::Invariant(format!(
                    "place-by-place factorization of {a} does not multiply back"
                )));
            }
        }
        Ok(())
    }

    fn eval_generic(&self, x: &[i64]) -> Result<Option<PointEval>, ProbeError> {
        let p = ProjectivePoint::from_canonical(x.to_vec());
        let r = evaluate(&self.scenario, &p)?;
        let Some(w) = r.weil_sum_s else {
            return Ok(None);
        };
        let m = p.max_abs();
        let ln_m = r.h.to_f64();
        let ln_w = w.to_f64();
        Ok(Some(PointEval {
            m,
            ln_m,
            ln_w,
            vojta: r.deficit_vojta.expect("off divisor").to_f64(),
            general: r.deficit_general.expect("off divisor").to_f64(),
            w: WeilArg::Big(w.arg().clone()),
        }))
    }
}

/// Exact `log W − c·log M`.
pub fn exact_deficit(w: &WeilArg, m: u64, c: &Rational) -> LogCombination {
    let mut z = LogCombination::term(Rational::from_integer(1.into()), &LogValue::of(w.to_rational()).expect("W > 0"));
    if m > 1 {
        z.push(-c.clone(), &LogValue::of(Rational::from_integer(BigInt::from(m))).expect("M > 0"));
    }
    z
}

/// Compares `log W_a − c log M_a` with `log W_b − c log M_b`, trusting the
/// float estimates only when they are clearly apart.
pub fn compare_deficits(fa: f64, wa: &WeilArg, ma: u64, fb: f64, wb: &WeilArg, mb: u64, c: &Rational) -> Ordering {
    let margin = 1e-9 * (1.0 + fa.abs().max(fb.abs()));
    if (fa - fb).abs() > margin {
        return fa.partial_cmp(&fb).expect("finite deficits");
    }
    if wa == wb && ma == mb {
        return Ordering::Equal;
    }
    exact_deficit(wa, ma, c).cmp_exact(&exact_deficit(wb, mb, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probe::enumerate_points;
    use crate::probe::scenario::tests_support::THREE_LINES;

    fn four_lines(places: &str) -> Scenario {
        let mut s = Scenario::from_json(&THREE_LINES.replace(r#"["inf"]"#, places)).unwrap();
        s.divisors.push(crate::arithmetic::Hypersurface::linear(&[1, 1, 1]).unwrap());
        s
    }

    #[test]
    fn machine_path_agrees_with_exact_path() {
        for places in [r#"["inf"]"#, r#"["inf", 2, 3]"#, r#"[2, 5]"#, "[]"] {
            let s = four_lines(places);
            let ev = Evaluator::new(&s);
            assert!(ev.is_fast());
            for p in enumerate_points(2, 12) {
                let fast = ev.eval(p.coords()).unwrap();
                let slow = ev.eval_generic(p.coords()).unwrap();
                match (fast, slow) {
                    (None, None) => {}
                    (Some(a), Some(b)) => {
                        assert_eq!(a.m, b.m);
                        assert_eq!(a.w.to_rational(), b.w.to_rational(), "{p} with S = {places}");
                        assert!((a.vojta - b.vojta).abs() < 1e-9 && (a.general - b.general).abs() < 1e-9);
                    }
                    _ => panic!("divisor membership differs at {p}"),
                }
            }
        }
    }

    #[test]
    fn large_bounds_fall_back_to_exact_path() {
        let mut s = four_lines(r#"["inf"]"#);
        s.divisors = vec![crate::arithmetic::Hypersurface::new(
            crate::arithmetic::HomogeneousForm::new(
                3,
                vec![crate::arithmetic::Monomial {
                    exps: vec![20, 0, 0],
                    coeff: 1,
                }],
            )
            .unwrap(),
        )
        .unwrap()];
        s.height_bound = 1 << 20;
        assert!(!Evaluator::new(&s).is_fast());
    }

    #[test]
    fn near_ties_are_settled_exactly() {
        let c = Rational::new(31.into(), 10.into());
        let w = WeilArg::Small { num: 8, den: 1 };
        // log 8 − c log 2 and log 8 − c log 2 on a different representation.
        let big = WeilArg::Big(Rational::new(16.into(), 2.into()));
        assert_eq!(compare_deficits(0.0, &w, 2, 0.0, &big, 2, &c), Ordering::Equal);
        // log 4 vs log 2 + log 2 − tiny: exact comparison decides.
        let a = WeilArg::Small { num: 4, den: 1 };
        let b = WeilArg::Small { num: 5, den: 1 };
        assert_eq!(compare_deficits(1.0, &a, 3, 1.0, &b, 3, &c), Ordering::Less);
    }
}
