//! Proper intersection of hypersurfaces in `P^n`, for the cases this crate
//! decides: hyperplane arrangements (ranks), binary forms (pairwise
//! resultants) and pairs of plane curves (resultants along a pencil of lines).

use super::form::resultant;
use super::{ArithmeticError, Hypersurface};
use crate::combinatorics::Combinations;
use crate::linalg;
use crate::rational;
use num_traits::Zero;

/// Whether every subfamily of size `k ≤ n+1` meets in codimension `k`.
pub fn general_position(forms: &[Hypersurface], n: usize) -> Result<bool, ArithmeticError> {
    if let Some(f) = forms.iter().find(|f| f.vars() != n + 1) {
        return Err(ArithmeticError::DimensionMismatch {
            expected: n + 1,
            got: f.vars(),
        });
    }
    if forms.len() <= 1 {
        return Ok(true);
    }
    if let Some(rows) = forms.iter().map(|f| f.linear_coefficients()).collect::<Option<Vec<_>>>() {
        return Ok(hyperplanes_in_general_position(&rows, n));
    }
    if n == 1 {
        let bin: Vec<_> = forms.iter().map(|f| f.binary_coefficients().expect("two variables")).collect();
        return Ok(Combinations::new(bin.len(), 2).all(|s| !resultant(&bin[s[0]], &bin[s[1]]).is_zero()));
    }
    if n == 2 && forms.len() == 2 {
        return plane_curves_meet_properly(&forms[0], &forms[1]);
    }
    Err(ArithmeticError::Unsupported(format!(
        "proper intersection of {} forms in P^{n} beyond hyperplanes, binary forms and pairs of plane curves",
        forms.len()
    )))
}

fn hyperplanes_in_general_position(rows: &[Vec<i64>], n: usize) -> bool {
    let k = rows.len().min(n + 1);
    Combinations::new(rows.len(), k).all(|s| {
        let m: Vec<_> = s.iter().map(|&i| rational::to_rational_vec(&rows[i])).collect();
        linalg::rank(&m, n + 1) == k
    })
}

/// Two plane curves meet in finitely many points iff they share no
/// component. Lines through a centre `c` that is not a common zero each
/// carry a nonzero restricted resultant unless they pass through an
/// intersection point or lie in either curve; with a shared component every
/// line meets it. So `e·f + e + f + 1` lines decide the question.
fn plane_curves_meet_properly(f: &Hypersurface, g: &Hypersurface) -> Result<bool, ArithmeticError> {
    let centre = (0..)
        .flat_map(|r: i64| (-r..=r).flat_map(move |a| (-r..=r).map(move |b| [1, a, b])))
        .find(|p| !f.eval(p).is_zero() || !g.eval(p).is_zero())
        .expect("nonzero forms do not vanish on all of Z^3");
    // Points a + k·b on a line avoiding the centre give distinct lines.
    let (a, b) = line_avoiding(&centre);
    let lines = (f.degree() * g.degree() + f.degree() + g.degree() + 1) as i64;
    for k in 0..lines {
        let q: Vec<i64> = (0..3).map(|i| a[i] + k * b[i]).collect();
        let rf = f.restrict_to_line(&centre, &q);
        let rg = g.restrict_to_line(&centre, &q);
        if !resultant(&rf, &rg).is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Two points spanning a line that misses `c`.
fn line_avoiding(c: &[i64; 3]) -> ([i64; 3], [i64; 3]) {
    let basis = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for i in 0..3 {
        for j in i + 1..3 {
            let (a, b) = (basis[i], basis[j]);
            let m = vec![
                rational::to_rational_vec(c),
                rational::to_rational_vec(&a),
                rational::to_rational_vec(&b),
            ];
            if !linalg::determinant(&m).is_zero() {
                return (a, b);
            }
        }
    }
    unreachable!("some coordinate line misses a nonzero point")
}
