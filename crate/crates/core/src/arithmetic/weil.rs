use super::factor::factorize;
use super::place::{abs_value, Place};
use super::{ArithmeticError, HomogeneousForm, LogValue, ProjectivePoint};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeSet;

/// `max_i |x_i|_v` over nonzero coordinates.
fn max_abs_at(v: Place, x: &ProjectivePoint) -> Rational {
    x.coords()
        .iter()
        .filter(|&&c| c != 0)
        .map(|&c| abs_value(v, &Rational::from_integer(BigInt::from(c))).expect("nonzero"))
        .max()
        .expect("a projective point has a nonzero coordinate")
}

fn primes_dividing(n: &BigInt, into: &mut BTreeSet<u64>) -> Result<(), ArithmeticError> {
    if n.is_zero() {
        return Ok(());
    }
    for (p, _) in factorize(n.magnitude()) {
        into.insert(p.to_u64().ok_or(ArithmeticError::Overflow)?);
    }
    Ok(())
}

fn coordinate_primes(x: &ProjectivePoint) -> Result<BTreeSet<u64>, ArithmeticError> {
    let mut s = BTreeSet::new();
    for &c in x.coords() {
        primes_dividing(&BigInt::from(c), &mut s)?;
    }
    Ok(s)
}

/// `h(x) = Σ_v log max_i |x_i|_v`, summed over ∞ and every prime dividing a
/// coordinate; checked against the archimedean term alone.
pub fn height(x: &ProjectivePoint) -> Result<LogValue, ArithmeticError> {
    let mut total = LogValue::of(max_abs_at(Place::Infinite, x)).expect("positive");
    for p in coordinate_primes(x)? {
        total = &total + &LogValue::of(max_abs_at(Place::Finite(p), x)).expect("positive");
    }
    let archimedean = Rational::from_integer(BigInt::from(x.max_abs()));
    if total.arg() != &archimedean {
        return Err(ArithmeticError::Invariant(format!(
            "height of {x} disagrees with its archimedean term"
        )));
    }
    Ok(total)
}

/// `h_{O(e)}(x) = e·h(x)`.
pub fn twist_height(x: &ProjectivePoint, e: i32) -> Result<LogValue, ArithmeticError> {
    Ok(height(x)?.times(e))
}

/// `h_{K}(x) = −(n+1)·h(x)` on `P^n`.
pub fn canonical_height(x: &ProjectivePoint) -> Result<LogValue, ArithmeticError> {
    twist_height(x, -(x.coords().len() as i32))
}

fn nonzero_value(f: &HomogeneousForm, x: &ProjectivePoint) -> Result<Rational, ArithmeticError> {
    let fx = f.eval_at(x)?;
    if fx.is_zero() {
        return Err(ArithmeticError::OnDivisor(x.to_string()));
    }
    Ok(Rational::from_integer(fx))
}

/// `λ_{F,v}(x) = log(max_i |x_i|_v^e / |F(x)|_v)`.
pub fn local_weil(f: &HomogeneousForm, v: Place, x: &ProjectivePoint) -> Result<LogValue, ArithmeticError> {
    let fx = nonzero_value(f, x)?;
    let num = max_abs_at(v, x).pow(f.degree() as i32);
    Ok(LogValue::of(num / abs_value(v, &fx)?).expect("positive"))
}

/// Places where `λ_{F,v}(x)` can be nonzero: ∞ and the primes dividing a
/// coordinate or `F(x)`.
pub fn weil_support(f: &HomogeneousForm, x: &ProjectivePoint) -> Result<Vec<Place>, ArithmeticError> {
    let fx = nonzero_value(f, x)?;
    let mut primes = coordinate_primes(x)?;
    primes_dividing(fx.numer(), &mut primes)?;
    Ok(std::iter::once(Place::Infinite)
        .chain(primes.into_iter().map(Place::Finite))
        .collect())
}

/// `Σ_v λ_{F,v}(x)` over [`weil_support`]; equals `e·h(x)` by the product formula.
pub fn global_weil_sum(f: &HomogeneousForm, x: &ProjectivePoint) -> Result<LogValue, ArithmeticError> {
    weil_support(f, x)?.into_iter().map(|v| local_weil(f, v, x)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::{Hypersurface, Monomial};
    use crate::rational::{int, ratio};

    fn pt(c: &[i64]) -> ProjectivePoint {
        ProjectivePoint::new(c.to_vec()).unwrap()
    }

    #[test]
    fn heights() {
        assert_eq!(height(&pt(&[1, 2, 3])).unwrap(), LogValue::of_int(3).unwrap());
        assert_eq!(height(&pt(&[1, 1, 1, 1])).unwrap(), LogValue::zero());
        assert_eq!(height(&pt(&[4, 6])).unwrap(), LogValue::of_int(3).unwrap());
        assert_eq!(canonical_height(&pt(&[1, 2, 3])).unwrap().arg(), &ratio(1, 27));
    }

    #[test]
    fn local_examples() {
        let x0 = Hypersurface::linear(&[1, 0]).unwrap();
        assert_eq!(
            local_weil(&x0, Place::Infinite, &pt(&[1, 2])).unwrap(),
            LogValue::of_int(2).unwrap()
        );
        assert_eq!(local_weil(&x0, Place::Finite(2), &pt(&[1, 2])).unwrap(), LogValue::zero());
        let q = HomogeneousForm::new(
            2,
            vec![
                Monomial {
                    exps: vec![2, 0],
                    coeff: 1,
                },
                Monomial {
                    exps: vec![0, 2],
                    coeff: 1,
                },
            ],
        )
        .unwrap();
        assert_eq!(local_weil(&q, Place::Infinite, &pt(&[1, 1])).unwrap().arg(), &ratio(1, 2));
        assert_eq!(
            local_weil(&x0, Place::Infinite, &pt(&[0, 1])),
            Err(ArithmeticError::OnDivisor("[0:1]".into()))
        );
    }

    #[test]
    fn global_examples() {
        let x0 = Hypersurface::linear(&[1, 0]).unwrap();
        assert_eq!(global_weil_sum(&x0, &pt(&[1, 2])).unwrap(), LogValue::of_int(2).unwrap());
        let x0x1 = HomogeneousForm::new(
            2,
            vec![Monomial {
                exps: vec![1, 1],
                coeff: 1,
            }],
        )
        .unwrap();
        let x = pt(&[2, 3]);
        assert_eq!(
            weil_support(&x0x1, &x).unwrap(),
            vec![Place::Infinite, Place::Finite(2), Place::Finite(3)]
        );
        assert_eq!(global_weil_sum(&x0x1, &x).unwrap().arg(), &int(9));
        // places 2 and 3 contribute log 2 and log 3; ∞ contributes log(9/6)
        assert_eq!(local_weil(&x0x1, Place::Finite(2), &x).unwrap().arg(), &int(2));
        assert_eq!(local_weil(&x0x1, Place::Infinite, &x).unwrap().arg(), &ratio(3, 2));
    }

    #[test]
    fn scaling_the_form() {
        let f = HomogeneousForm::linear(&[1, 1, 1]).unwrap();
        let g = f.scaled(12).unwrap();
        let x = pt(&[3, 5, -2]);
        assert_ne!(
            local_weil(&g, Place::Finite(2), &x).unwrap(),
            local_weil(&f, Place::Finite(2), &x).unwrap()
        );
        assert_eq!(global_weil_sum(&g, &x).unwrap(), global_weil_sum(&f, &x).unwrap());
        let back = Hypersurface::primitive_part(&g);
        assert_eq!(
            local_weil(&back, Place::Finite(2), &x).unwrap(),
            local_weil(&f, Place::Finite(2), &x).unwrap()
        );
    }
}
