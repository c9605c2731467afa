use super::{ArithmeticError, ProjectivePoint};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::ops::Deref;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Monomial {
    pub exps: Vec<u32>,
    pub coeff: i64,
}

/// Homogeneous integer polynomial in `vars` variables, monomials merged and
/// sorted, zero coefficients dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FormJson", into = "FormJson")]
pub struct HomogeneousForm {
    vars: usize,
    degree: u32,
    monomials: Vec<Monomial>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormJson {
    vars: usize,
    monomials: Vec<Monomial>,
}

impl TryFrom<FormJson> for HomogeneousForm {
    type Error = ArithmeticError;

    fn try_from(j: FormJson) -> Result<Self, Self::Error> {
        HomogeneousForm::new(j.vars, j.monomials)
    }
}

impl From<HomogeneousForm> for FormJson {
    fn from(f: HomogeneousForm) -> Self {
        FormJson {
            vars: f.vars,
            monomials: f.monomials,
        }
    }
}

impl HomogeneousForm {
    pub fn new(vars: usize, monomials: Vec<Monomial>) -> Result<Self, ArithmeticError> {
        if vars < 2 {
            return Err(ArithmeticError::Malformed("a form on P^n needs at least 2 variables".into()));
        }
        let mut merged: Vec<Monomial> = Vec::new();
        let mut sorted = monomials;
        sorted.sort_by(|a, b| a.exps.cmp(&b.exps));
        for m in sorted {
            if m.exps.len() != vars {
                return Err(ArithmeticError::DimensionMismatch {
                    expected: vars,
                    got: m.exps.len(),
                });
            }
            match merged.last_mut() {
                Some(last) if last.exps == m.exps => {
                    last.coeff = last.coeff.checked_add(m.coeff).ok_or(ArithmeticError::Overflow)?;
                }
                _ => merged.push(m),
            }
        }
        merged.retain(|m| m.coeff != 0);
        let Some(first) = merged.first() else {
            return Err(ArithmeticError::ZeroForm);
        };
        let degree: u32 = first.exps.iter().sum();
        if merged.iter().any(|m| m.exps.iter().sum::<u32>() != degree) {
            return Err(ArithmeticError::NotHomogeneous);
        }
        if degree == 0 {
            return Err(ArithmeticError::Malformed("constant form defines no hypersurface".into()));
        }
        Ok(Self {
            vars,
            degree,
            monomials: merged,
        })
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[i64]) -> Result<Self, ArithmeticError> {
        let n = coeffs.len();
        let monomials = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| Monomial {
                exps: (0..n).map(|j| u32::from(i == j)).collect(),
                coeff: c,
            })
            .collect();
        Self::new(n, monomials)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn content(&self) -> i64 {
        self.monomials.iter().fold(0i64, |g, m| g.gcd(&m.coeff))
    }

    /// Coefficients of a linear form, in variable order.
    pub fn linear_coefficients(&self) -> Option<Vec<i64>> {
        (self.degree == 1).then(|| {
            let mut c = vec![0; self.vars];
            for m in &self.monomials {
                c[m.exps.iter().position(|&e| e == 1).expect("degree one")] = m.coeff;
            }
            c
        })
    }

    pub fn scaled(&self, c: i64) -> Result<Self, ArithmeticError> {
        let monomials = self
            .monomials
            .iter()
            .map(|m| {
                Ok(Monomial {
                    exps: m.exps.clone(),
                    coeff: m.coeff.checked_mul(c).ok_or(ArithmeticError::Overflow)?,
                })
            })
            .collect::<Result<_, ArithmeticError>>()?;
        Self::new(self.vars, monomials)
    }

    /// Exact value at an integer vector.
    pub fn eval(&self, x: &[i64]) -> BigInt {
        self.eval_big(&x.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>())
    }

    pub fn eval_big(&self, x: &[BigInt]) -> BigInt {
        debug_assert_eq!(x.len(), self.vars);
        self.monomials
            .iter()
            .map(|m| m.exps.iter().zip(x).fold(BigInt::from(m.coeff), |acc, (&e, v)| acc * v.pow(e)))
            .sum()
    }

    pub fn eval_at(&self, x: &ProjectivePoint) -> Result<BigInt, ArithmeticError> {
        if x.coords().len() != self.vars {
            return Err(ArithmeticError::DimensionMismatch {
                expected: self.vars,
                got: x.coords().len(),
            });
        }
        Ok(self.eval(x.coords()))
    }

    /// Restriction to the line `s·p + t·q`, as the coefficients of
    /// `s^{e−k} t^k` for k = 0..=e.
    pub fn restrict_to_line(&self, p: &[i64], q: &[i64]) -> Vec<BigInt> {
        let e = self.degree as usize;
        // Each coordinate is the binary linear form p_i s + q_i t; expand
        // monomials by repeated multiplication.
        let mut total = vec![BigInt::zero(); e + 1];
        for m in &self.monomials {
            let mut poly = vec![BigInt::from(m.coeff)];
            for (i, &k) in m.exps.iter().enumerate() {
                for _ in 0..k {
                    let mut next = vec![BigInt::zero(); poly.len() + 1];
                    for (j, c) in poly.iter().enumerate() {
                        next[j] += c * p[i];
                        next[j + 1] += c * q[i];
                    }
                    poly = next;
                }
            }
            for (t, c) in total.iter_mut().zip(poly) {
                *t += c;
            }
        }
        total
    }

    /// Binary form coefficients of `s^{e−k} t^k` (requires `vars == 2`).
    pub fn binary_coefficients(&self) -> Option<Vec<BigInt>> {
        (self.vars == 2).then(|| self.restrict_to_line(&[1, 0], &[0, 1]))
    }
}

/// A hypersurface of `P^n`: a homogeneous form with coprime coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HomogeneousForm", into = "HomogeneousForm")]
pub struct Hypersurface(HomogeneousForm);

impl TryFrom<HomogeneousForm> for Hypersurface {
    type Error = ArithmeticError;

    fn try_from(f: HomogeneousForm) -> Result<Self, Self::Error> {
        Hypersurface::new(f)
    }
}

impl From<Hypersurface> for HomogeneousForm {
    fn from(h: Hypersurface) -> Self {
        h.0
    }
}

impl Hypersurface {
    /// Rejects forms whose coefficients share a factor.
    pub fn new(f: HomogeneousForm) -> Result<Self, ArithmeticError> {
        if f.content() != 1 {
            return Err(ArithmeticError::NotPrimitive);
        }
        Ok(Self(f))
    }

    /// Divides out the content.
    pub fn primitive_part(f: &HomogeneousForm) -> Self {
        let g = f.content();
        let monomials = f
            .monomials
            .iter()
            .map(|m| Monomial {
                exps: m.exps.clone(),
                coeff: m.coeff / g,
            })
            .collect();
        Self(HomogeneousForm::new(f.vars, monomials).expect("dividing by the content keeps the form valid"))
    }

    pub fn linear(coeffs: &[i64]) -> Result<Self, ArithmeticError> {
        Self::new(HomogeneousForm::linear(coeffs)?)
    }

    pub fn form(&self) -> &HomogeneousForm {
        &self.0
    }

    /// `n` for a hypersurface of `P^n`.
    pub fn ambient_dim(&self) -> usize {
        self.0.vars - 1
    }
}

impl Deref for Hypersurface {
    type Target = HomogeneousForm;

    fn deref(&self) -> &HomogeneousForm {
        &self.0
    }
}

/// Sylvester resultant of binary forms given by coefficients of
/// `s^{deg−k} t^k`; zero iff they share a zero on `P^1` (or either is zero).
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (e, d) = (f.len() - 1, g.len() - 1);
    if f.iter().all(Zero::is_zero) || g.iter().all(Zero::is_zero) {
        return BigInt::zero();
    }
    if e == 0 && d == 0 {
        return BigInt::one();
    }
    let size = e + d;
    let mut rows: Vec<Vec<crate::Rational>> = Vec::with_capacity(size);
    for i in 0..d {
        let mut row = vec![crate::Rational::zero(); size];
        for (k, c) in f.iter().enumerate() {
            row[i + k] = crate::Rational::from_integer(c.clone());
        }
        rows.push(row);
    }
    for i in 0..e {
        let mut row = vec![crate::Rational::zero(); size];
        for (k, c) in g.iter().enumerate() {
            row[i + k] = crate::Rational::from_integer(c.clone());
        }
        rows.push(row);
    }
    crate::linalg::determinant(&rows).to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn form(vars: usize, terms: &[(&[u32], i64)]) -> HomogeneousForm {
        HomogeneousForm::new(
            vars,
            terms
                .iter()
                .map(|(e, c)| Monomial {
                    exps: e.to_vec(),
                    coeff: *c,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn construction_rules() {
        assert_eq!(
            HomogeneousForm::new(
                2,
                vec![
                    Monomial {
                        exps: vec![1, 0],
                        coeff: 1
                    },
                    Monomial {
                        exps: vec![0, 2],
                        coeff: 1
                    }
                ]
            ),
            Err(ArithmeticError::NotHomogeneous)
        );
        assert_eq!(
            HomogeneousForm::new(
                2,
                vec![
                    Monomial {
                        exps: vec![1, 0],
                        coeff: 1
                    },
                    Monomial {
                        exps: vec![1, 0],
                        coeff: -1
                    }
                ]
            ),
            Err(ArithmeticError::ZeroForm)
        );
        let f = form(3, &[(&[2, 0, 0], 2), (&[0, 1, 1], 4)]);
        assert_eq!(Hypersurface::new(f.clone()), Err(ArithmeticError::NotPrimitive));
        assert_eq!(Hypersurface::primitive_part(&f).monomials()[0].coeff, 2);
    }

    #[test]
    fn evaluation_and_restriction() {
        let f = form(3, &[(&[2, 0, 0], 1), (&[0, 1, 1], -3)]);
        assert_eq!(f.eval(&[2, 1, 5]), BigInt::from(4 - 15));
        // restricted to s(1,0,0) + t(0,1,1): s² − 3t²
        assert_eq!(
            f.restrict_to_line(&[1, 0, 0], &[0, 1, 1]),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(-3)]
        );
    }

    #[test]
    fn resultants() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        // s and t share no zero
        assert_eq!(resultant(&b(&[1, 0]), &b(&[0, 1])), BigInt::from(1));
        // (s − t)(s + t) and s − t share one
        assert_eq!(resultant(&b(&[1, 0, -1]), &b(&[1, -1])), BigInt::zero());
        // s² + t² and s t: Res = 1 by hand (no common zero over C)
        assert_eq!(resultant(&b(&[1, 0, 1]), &b(&[0, 1, 0])).abs(), BigInt::from(1));
        // both vanish at (1:0)
        assert_eq!(resultant(&b(&[0, 1]), &b(&[0, 0, 1])), BigInt::zero());
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"vars": 3, "monomials": [{"exps": [1,0,0], "coeff": 1}, {"exps": [0,1,0], "coeff": 1}]}"#;
        let h: Hypersurface = serde_json::from_str(s).unwrap();
        assert_eq!(h.linear_coefficients(), Some(vec![1, 1, 0]));
        let back: Hypersurface = serde_json::from_str(&serde_json::to_string(&h).unwrap()).unwrap();
        assert_eq!(back, h);
    }
}
