use super::enumerate::{prefixes, visit_suffixes};
use super::fast::Evaluator;
use super::report::{Candidate, Counts, DeficitSummary, HistogramCell, PointRecord, ProbeReport};
use super::stats::{Acc, Context, Entry, Layout, Reserve, COARSE_PER_UNIT, FINE_PER_UNIT};
use super::{ProbeError, Scenario};
use crate::arithmetic::ProjectivePoint;
use crate::linalg;
use crate::rational::{self, Rational};
use crate::toric::primitive_vectors;
use rayon::prelude::*;
use std::collections::BTreeSet;

/// Entries kept per deficit while streaming; on- and off-candidate maxima
/// are read from here, with a second pass only if all of them are on
/// candidates.
pub const RESERVE: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeOptions {
    pub check_hypotheses: bool,
    /// Fractional digits in decimal renderings.
    pub precision: usize,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        Self {
            check_hypotheses: true,
            precision: 12,
        }
    }
}

fn deficit_bounds(s: &Scenario) -> (f64, f64) {
    let ln_h = (s.height_bound as f64).ln();
    let ln_b: f64 = s
        .divisors
        .iter()
        .map(|d| {
            let c: f64 = d.monomials().iter().map(|m| m.coeff.unsigned_abs() as f64).sum();
            c.ln() + f64::from(d.degree()) * ln_h
        })
        .sum();
    let has_inf = s.places.iter().any(|p| p.is_infinite());
    let (w_lo, w_hi) = if has_inf {
        (-ln_b, f64::from(s.total_degree()) * ln_h)
    } else {
        (0.0, ln_b)
    };
    let c = rational::to_f64(&s.vojta_coefficient()).max(rational::to_f64(&s.general_coefficient()));
    (w_lo - c * ln_h - 1.0, w_hi + 1.0)
}

/// Streams every canonical point of height ≤ H through the evaluator on the
/// current rayon pool.
pub fn run(s: &Scenario, opts: &ProbeOptions) -> Result<ProbeReport, ProbeError> {
    s.validate(opts.check_hypotheses)?;
    let ev = Evaluator::new(s);
    let (lo, hi) = deficit_bounds(s);
    let layout = Layout::new(lo, hi, (s.height_bound as f64).ln());
    let (c_vojta, c_general) = (s.vojta_coefficient(), s.general_coefficient());
    let ctx = Context {
        layout,
        c_vojta: &c_vojta,
        c_general: &c_general,
        half_bound: (s.height_bound / 2) as u64,
    };
    let reserve = RESERVE.max(s.top_k);
    let (n, h) = (s.n, s.height_bound);
    let acc = prefixes(n, h)
        .into_par_iter()
        .fold(
            || Acc::new(&layout, reserve),
            |mut acc, prefix| {
                visit_suffixes(n, h, &prefix, |x| match ev.eval(x) {
                    Ok(e) => acc.add(&ctx, x, e.as_ref()),
                    Err(err) => {
                        acc.enumerated += 1;
                        acc.fail(x, err.to_string());
                    }
                });
                acc
            },
        )
        .reduce(|| Acc::new(&layout, reserve), |a, b| a.merge(b, &ctx));
    if let Some((x, msg)) = acc.failure {
        return Err(ProbeError::Invariant(format!("self-check failed at {x:?}: {msg}")));
    }
    finish(s, opts, &ev, &ctx, acc)
}

fn finish(s: &Scenario, opts: &ProbeOptions, ev: &Evaluator, ctx: &Context, acc: Acc) -> Result<ProbeReport, ProbeError> {
    let off = acc.enumerated - acc.on_divisor;
    let q99 = percentile_99(&acc.fine, ctx.layout.fine_lo, off);
    let threshold = q99.map_or(0.0, |q| q.max(0.0));

    // Sort positives by point for a schedule-independent candidate count.
    let stride = s.n + 1;
    let mut positives: Vec<(&[i64], f64)> = acc
        .positive_coords
        .chunks(stride)
        .zip(acc.positive_values.iter().copied())
        .collect();
    positives.sort_by(|a, b| a.0.cmp(b.0));
    let high: Vec<&[i64]> = positives.iter().filter(|(_, f)| *f > threshold).map(|(c, _)| *c).collect();

    let vertices = arrangement_vertices(s);
    let mut candidates = Vec::new();
    for a in primitive_vectors(stride, s.cluster_height) {
        if a.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            continue;
        }
        let count = high.iter().filter(|p| dot(&a, p) == 0).count();
        if count >= s.cluster_threshold.max(1) {
            candidates.push(Candidate {
                coefficients: a.clone(),
                high_points: count,
                arrangement_vertices: vertices.as_ref().map(|vs| vs.iter().filter(|v| dot(&a, v.coords()) == 0).count()),
            });
        }
    }
    let lines: Vec<Vec<i64>> = candidates.iter().map(|c| c.coefficients.clone()).collect();
    let on_candidate = |x: &[i64]| lines.iter().any(|a| dot(a, x) == 0);

    let split = |r: &Reserve, general: bool| -> Result<(Option<Entry>, Option<Entry>), ProbeError> {
        let on = r.entries.iter().find(|e| on_candidate(&e.coords)).cloned();
        let offc = r.entries.iter().find(|e| !on_candidate(&e.coords)).cloned();
        let exhaustive = !r.is_full() || off as usize <= r.entries.len();
        let on = match on {
            Some(e) => Some(e),
            None if exhaustive || lines.is_empty() => None,
            None => best_where(s, ev, ctx, general, &on_candidate)?,
        };
        let offc = match offc {
            Some(e) => Some(e),
            None if exhaustive => None,
            None => best_where(s, ev, ctx, general, &|x: &[i64]| !on_candidate(x))?,
        };
        Ok((on, offc))
    };
    let (on_v, off_v) = split(&acc.top_vojta, false)?;
    let (on_g, off_g) = split(&acc.top_general, true)?;

    let record = |e: &Entry| point_record(ev, e, opts.precision);
    let summary =
        |r: &Reserve, half: &Reserve, on: Option<Entry>, offc: Option<Entry>, c: &Rational| -> Result<DeficitSummary, ProbeError> {
            Ok(DeficitSummary {
                coefficient: c.clone(),
                max: r.best().map(record).transpose()?,
                max_half_bound: half.best().map(record).transpose()?,
                max_on_candidates: on.as_ref().map(record).transpose()?,
                max_off_candidates: offc.as_ref().map(record).transpose()?,
                top: r.entries.iter().take(s.top_k).map(record).collect::<Result<_, _>>()?,
            })
        };
    let deficit_vojta = summary(&acc.top_vojta, &acc.half_vojta, on_v, off_v, ctx.c_vojta)?;
    let deficit_general = summary(&acc.top_general, &acc.half_general, on_g, off_g, ctx.c_general)?;

    let mut histogram = Vec::new();
    for hb in 0..ctx.layout.h_len {
        for db in 0..ctx.layout.coarse_len {
            let count = acc.grid[hb * ctx.layout.coarse_len + db];
            if count > 0 {
                histogram.push(HistogramCell {
                    h_bin: hb as i64,
                    deficit_bin: db as i64 + ctx.layout.coarse_lo,
                    count,
                });
            }
        }
    }

    Ok(ProbeReport {
        n: s.n,
        height_bound: s.height_bound,
        places: s.places.clone(),
        epsilon: s.epsilon.clone(),
        beta: s.beta.clone(),
        cluster_threshold: s.cluster_threshold,
        cluster_height: s.cluster_height,
        machine_integer_path: ev.is_fast(),
        counts: Counts {
            enumerated: acc.enumerated,
            on_divisor: acc.on_divisor,
            off_divisor: off,
            positive_deficit_vojta: acc.positive_vojta,
            self_checks_passed: off,
        },
        q99_deficit_vojta: q99.map(|q| format!("{q:.prec$}", prec = opts.precision)),
        high_threshold: format!("{threshold:.prec$}", prec = opts.precision),
        deficit_vojta,
        deficit_general,
        histogram_bins_per_unit: COARSE_PER_UNIT,
        histogram,
        arrangement_vertices: vertices,
        candidates,
    })
}

fn dot(a: &[i64], x: &[i64]) -> i128 {
    a.iter().zip(x).map(|(&p, &q)| i128::from(p) * i128::from(q)).sum()
}

/// Upper edge of the fine bin where the cumulative count reaches 99%.
fn percentile_99(fine: &[u64], fine_lo: i64, total: u64) -> Option<f64> {
    if total == 0 {
        return None;
    }
    let target = (total * 99).div_ceil(100);
    let mut cum = 0;
    for (i, &c) in fine.iter().enumerate() {
        cum += c;
        if cum >= target {
            return Some((i as i64 + fine_lo + 1) as f64 / FINE_PER_UNIT as f64);
        }
    }
    None
}

/// Points where `n` of the divisors meet, when all of them are hyperplanes.
fn arrangement_vertices(s: &Scenario) -> Option<Vec<ProjectivePoint>> {
    let rows: Vec<Vec<i64>> = s.divisors.iter().map(|d| d.linear_coefficients()).collect::<Option<_>>()?;
    let mut out = BTreeSet::new();
    for subset in crate::combinatorics::Combinations::new(rows.len(), s.n) {
        let m: Vec<Vec<Rational>> = subset.iter().map(|&i| rational::to_rational_vec(&rows[i])).collect();
        let ns = linalg::null_space(&m, s.n + 1);
        if ns.len() != 1 {
            continue;
        }
        let (ints, _) = rational::primitive_integer(&ns[0]);
        let coords: Option<Vec<i64>> = ints.iter().map(|x| i64::try_from(x).ok()).collect();
        if let Some(p) = coords.and_then(|c| ProjectivePoint::new(c).ok()) {
            out.insert(p);
        }
    }
    Some(out.into_iter().collect())
}

fn best_where(
    s: &Scenario,
    ev: &Evaluator,
    ctx: &Context,
    general: bool,
    pred: &(dyn Fn(&[i64]) -> bool + Sync),
) -> Result<Option<Entry>, ProbeError> {
    let (n, h) = (s.n, s.height_bound);
    let c = if general { ctx.c_general } else { ctx.c_vojta };
    let best = prefixes(n, h)
        .into_par_iter()
        .map(|prefix| {
            let mut r = Reserve::new(1);
            let mut err = None;
            visit_suffixes(n, h, &prefix, |x| {
                if !pred(x) {
                    return;
                }
                match ev.eval(x) {
                    Ok(Some(e)) => r.offer(x, if general { e.general } else { e.vojta }, e.m, &e.w, c),
                    Ok(None) => {}
                    Err(e) => {
                        err.get_or_insert(e);
                    }
                }
            });
            match err {
                Some(e) => Err(e),
                None => Ok(r),
            }
        })
        .try_reduce(
            || Reserve::new(1),
            |mut a, b| {
                a.merge(b, c);
                Ok(a)
            },
        )?;
    Ok(best.entries.into_iter().next())
}

fn point_record(ev: &Evaluator, e: &Entry, precision: usize) -> Result<PointRecord, ProbeError> {
    let full = ev
        .eval(&e.coords)?
        .ok_or_else(|| ProbeError::Invariant("stored point lies on the divisor".into()))?;
    let fmt = |x: f64| format!("{x:.precision$}");
    Ok(PointRecord {
        point: ProjectivePoint::from_canonical(e.coords.clone()),
        max_coordinate: full.m,
        weil_sum_arg: full.w.to_rational(),
        h: fmt(full.ln_m),
        weil_sum: fmt(full.ln_w),
        deficit_vojta: fmt(full.vojta),
        deficit_general: fmt(full.general),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::Hypersurface;
    use crate::probe::scenario::tests_support::THREE_LINES;
    use crate::probe::{enumerate_points, evaluate};
    use std::cmp::Ordering;

    fn scenario(places: &str, h: i64, extra: bool) -> Scenario {
        let mut s = Scenario::from_json(&THREE_LINES.replace(r#"["inf"]"#, places)).unwrap();
        s.height_bound = h;
        if extra {
            s.divisors.push(Hypersurface::linear(&[1, 1, 1]).unwrap());
        }
        s
    }

    fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
    }

    /// Brute-force maximum of a deficit over all off-divisor points.
    fn brute_max(s: &Scenario, general: bool) -> crate::arithmetic::LogCombination {
        enumerate_points(s.n, s.height_bound)
            .filter_map(|p| {
                let r = evaluate(s, &p).unwrap();
                if general {
                    r.deficit_general
                } else {
                    r.deficit_vojta
                }
            })
            .max_by(|a, b| a.cmp_exact(b))
            .unwrap()
    }

    #[test]
    fn three_lines_general_deficit_is_nonpositive() {
        let s = scenario(r#"["inf", 2, 3]"#, 30, false);
        let r = run(&s, &ProbeOptions::default()).unwrap();
        assert_eq!(r.counts.enumerated, enumerate_points(2, 30).count() as u64);
        assert_eq!(r.counts.off_divisor, r.counts.self_checks_passed);
        assert_eq!(r.counts.positive_deficit_vojta, 0);
        let best = r.deficit_general.max.unwrap();
        assert_eq!(best.exact_deficit(&s.general_coefficient()).signum(), Ordering::Equal);
        assert!(r.candidates.is_empty());
    }

    #[test]
    fn maxima_match_brute_force() {
        let s = scenario(r#"["inf", 2, 3]"#, 16, true);
        let r = run(&s, &ProbeOptions::default()).unwrap();
        for (general, summary) in [(false, &r.deficit_vojta), (true, &r.deficit_general)] {
            let got = summary.max.as_ref().unwrap().exact_deficit(&summary.coefficient);
            assert_eq!(got.cmp_exact(&brute_max(&s, general)), Ordering::Equal);
            for w in summary.top.windows(2) {
                let (a, b) = (w[0].exact_deficit(&summary.coefficient), w[1].exact_deficit(&summary.coefficient));
                assert_ne!(a.cmp_exact(&b), Ordering::Less);
            }
        }
    }

    #[test]
    fn candidate_counts_match_direct_evaluation() {
        let mut s = scenario(r#"["inf", 2, 3]"#, 24, true);
        s.cluster_threshold = 1;
        s.cluster_height = 1;
        let r = run(&s, &ProbeOptions::default()).unwrap();
        let threshold: f64 = r.high_threshold.parse().unwrap();
        let high: Vec<Vec<i64>> = enumerate_points(2, 24)
            .filter_map(|p| {
                let d = evaluate(&s, &p).unwrap().deficit_vojta?;
                (d.to_f64() > threshold).then(|| p.coords().to_vec())
            })
            .collect();
        assert!(!r.candidates.is_empty());
        for c in &r.candidates {
            let expected = high.iter().filter(|p| dot(&c.coefficients, p) == 0).count();
            assert_eq!(c.high_points, expected, "{:?}", c.coefficients);
        }
        // the diagonals through two arrangement vertices are found
        for diag in [[0, 1, 1], [1, 0, 1], [1, 1, 0]] {
            let c = r.candidates.iter().find(|c| c.coefficients == diag).unwrap();
            assert_eq!(c.arrangement_vertices, Some(2));
        }
    }

    #[test]
    fn report_is_independent_of_worker_count() {
        let s = scenario(r#"["inf", 2, 3]"#, 35, true);
        let one = in_pool(1, || run(&s, &ProbeOptions::default()).unwrap());
        let four = in_pool(4, || run(&s, &ProbeOptions::default()).unwrap());
        assert_eq!(one.to_json(), four.to_json());
        assert_eq!(one.to_csv(), four.to_csv());
    }

    #[test]
    fn empty_place_set_gives_nonpositive_deficits() {
        let s = scenario("[]", 20, false);
        let r = run(&s, &ProbeOptions::default()).unwrap();
        assert_eq!(r.counts.positive_deficit_vojta, 0);
        for summary in [&r.deficit_vojta, &r.deficit_general] {
            for rec in &summary.top {
                assert_eq!(rec.weil_sum_arg, rational::int(1));
                assert_ne!(rec.exact_deficit(&summary.coefficient).signum(), Ordering::Greater);
            }
        }
    }

    #[test]
    fn off_candidate_maximum_matches_rescan() {
        let mut s = scenario(r#"["inf", 2, 3]"#, 30, true);
        s.cluster_threshold = 1;
        s.cluster_height = 1;
        let r = run(&s, &ProbeOptions::default()).unwrap();
        let lines: Vec<Vec<i64>> = r.candidates.iter().map(|c| c.coefficients.clone()).collect();
        let ev = Evaluator::new(&s);
        let (lo, hi) = deficit_bounds(&s);
        let layout = Layout::new(lo, hi, (s.height_bound as f64).ln());
        let (cv, cg) = (s.vojta_coefficient(), s.general_coefficient());
        let ctx = Context {
            layout,
            c_vojta: &cv,
            c_general: &cg,
            half_bound: 15,
        };
        let off = best_where(&s, &ev, &ctx, false, &|x: &[i64]| lines.iter().all(|a| dot(a, x) != 0))
            .unwrap()
            .unwrap();
        let rec = r.deficit_vojta.max_off_candidates.unwrap();
        assert_eq!(rec.point.coords(), &off.coords[..]);
    }
}
