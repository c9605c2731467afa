//! Golden checks run by `kstab selftest`: reference β values, the two β
//! pipelines on every fixture, and the exact arithmetic identities.

use crate::arithmetic::{abs_value, global_weil_sum, height, HomogeneousForm, LogValue, Monomial, Place, ProjectivePoint};
use crate::rational::{int, ratio, Rational};
use crate::stability::{beta, beta_via_barycentre};
use crate::toric::{fixtures, primitive_vectors, ToricFano, ToricValuation};
use num_traits::One;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn anticanonical_beta(x: &ToricFano, u: &[i64]) -> Result<Rational, String> {
    let v = ToricValuation::new(u.to_vec()).map_err(|e| e.to_string())?;
    beta(x, &x.anticanonical(), &v).map_err(|e| e.to_string())
}

fn expect_beta(name: String, x: &ToricFano, u: &[i64], expected: Rational) -> Check {
    match anticanonical_beta(x, u) {
        Ok(b) => check(name, b == expected, format!("β = {b}, expected {expected}")),
        Err(e) => check(name, false, e),
    }
}

pub fn golden_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=4 {
        let mut e1 = vec![0; n];
        e1[0] = 1;
        out.push(expect_beta(
            format!("beta of a hyperplane on P^{n}"),
            &fixtures::projective_space(n),
            &e1,
            int(1),
        ));
    }
    out.push(expect_beta(
        "beta of the blow-up valuation on P1xP1".into(),
        &fixtures::product_of_lines(),
        &[1, 1],
        int(2),
    ));
    // −K_{P²} is the sum of q = 3 coordinate lines, each giving q/(d+1).
    let p2 = fixtures::projective_plane();
    for r in p2.fan().rays() {
        out.push(expect_beta(
            format!("beta of the coordinate line {r:?} on P^2 is q/(d+1)"),
            &p2,
            r,
            ratio(3, 3),
        ));
    }
    out.push(pipeline_equivalence());
    out.push(product_formula());
    out.push(global_sums());
    out.push(match height(&ProjectivePoint::new(vec![1, 2, 3]).expect("valid point")) {
        Ok(h) => check(
            "height of [1:2:3] is log 3",
            h == LogValue::of_int(3).expect("positive"),
            format!("h = log {}", h.arg()),
        ),
        Err(e) => check("height of [1:2:3] is log 3", false, e.to_string()),
    });
    out
}

/// Slab integration and the barycentre formula agree on every fixture, for
/// every ray and every primitive vector of max-norm 1.
fn pipeline_equivalence() -> Check {
    let mut compared = 0;
    for x in fixtures::all() {
        let mut dirs = x.fan().rays().to_vec();
        dirs.extend(primitive_vectors(x.dim(), 1));
        for u in dirs {
            let v = ToricValuation::new(u.clone()).expect("primitive");
            let (a, b) = match (beta(&x, &x.anticanonical(), &v), beta_via_barycentre(&x, &x.anticanonical(), &v)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return check("pipeline equivalence on fixtures", false, format!("{u:?}: {e}")),
            };
            if a != b {
                return check(
                    "pipeline equivalence on fixtures",
                    false,
                    format!("{u:?}: slab {a} vs barycentre {b}"),
                );
            }
            compared += 1;
        }
    }
    check("pipeline equivalence on fixtures", true, format!("{compared} directions agree"))
}

/// `Π_v |r|_v = 1` for every `r = a/b` with `0 < |a|, b ≤ 60`.
fn product_formula() -> Check {
    let mut tested = 0;
    for a in -60i64..=60 {
        for b in 1i64..=60 {
            if a == 0 {
                continue;
            }
            let r = ratio(a, b);
            let mut places = vec![Place::Infinite];
            places.extend(prime_divisors(a.unsigned_abs() * b as u64).into_iter().map(Place::Finite));
            let product: Rational = places.iter().map(|&v| abs_value(v, &r).expect("nonzero")).product();
            if !product.is_one() {
                return check("product formula", false, format!("product over places of |{r}| is {product}"));
            }
            tested += 1;
        }
    }
    check("product formula", true, format!("{tested} rationals"))
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Σ_v λ_{F,v}(x) = deg F · h(x)` over a fixed family of forms and points.
fn global_sums() -> Check {
    let m = |exps: [u32; 3], coeff: i64| Monomial {
        exps: exps.to_vec(),
        coeff,
    };
    let forms = [
        vec![m([1, 0, 0], 1)],
        vec![m([1, 0, 0], 1), m([0, 1, 0], 1), m([0, 0, 1], 1)],
        vec![m([2, 0, 0], 1), m([0, 2, 0], 1), m([0, 0, 2], -3)],
        vec![m([1, 1, 1], 6), m([3, 0, 0], -1), m([0, 0, 3], 4)],
    ];
    let mut tested = 0;
    for f in forms {
        let f = HomogeneousForm::new(3, f).expect("valid form");
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                for c in [1i64, 5, 12] {
                    let Ok(x) = ProjectivePoint::new(vec![a, b, c]) else { continue };
                    if f.eval(x.coords()) == 0.into() {
                        continue;
                    }
                    let (sum, h) = match (global_weil_sum(&f, &x), height(&x)) {
                        (Ok(s), Ok(h)) => (s, h),
                        (Err(e), _) | (_, Err(e)) => return check("global Weil sum is deg·h", false, format!("{x}: {e}")),
                    };
                    if sum != h.times(f.degree() as i32) {
                        return check("global Weil sum is deg·h", false, format!("{x}: sum log {}", sum.arg()));
                    }
                    tested += 1;
                }
            }
        }
    }
    check("global Weil sum is deg·h", true, format!("{tested} (form, point) pairs"))
}
