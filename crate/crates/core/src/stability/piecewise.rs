use crate::geometry::GeometryError;
use crate::linalg;
use crate::rational::{self, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// A continuous function on `[t_0, t_k]` that is a polynomial on each
/// `[t_i, t_{i+1}]`. Piece coefficients are ascending powers of `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewisePolynomial {
    #[serde(with = "rational::serde_vec")]
    breakpoints: Vec<Rational>,
    #[serde(with = "rational::serde_mat")]
    pieces: Vec<Vec<Rational>>,
}

fn horner(coeffs: &[Rational], t: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
}

/// `∫_a^b p(t) dt` for ascending coefficients.
fn definite_integral(coeffs: &[Rational], a: &Rational, b: &Rational) -> Rational {
    let anti: Vec<Rational> = std::iter::once(Rational::zero())
        .chain(coeffs.iter().enumerate().map(|(k, c)| c / rational::int(k as i64 + 1)))
        .collect();
    horner(&anti, b) - horner(&anti, a)
}

impl PiecewisePolynomial {
    /// Checks that breakpoints strictly increase, that there is one piece
    /// per interval, and that adjacent pieces agree at shared breakpoints.
    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<Vec<Rational>>) -> Result<Self, GeometryError> {
        if breakpoints.len() < 2 || pieces.len() + 1 != breakpoints.len() {
            return Err(GeometryError::Malformed(format!(
                "{} breakpoints need {} pieces, got {}",
                breakpoints.len(),
                breakpoints.len().saturating_sub(1),
                pieces.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(GeometryError::Malformed("breakpoints must strictly increase".into()));
        }
        for (i, w) in pieces.windows(2).enumerate() {
            let t = &breakpoints[i + 1];
            if horner(&w[0], t) != horner(&w[1], t) {
                return Err(GeometryError::Malformed(format!("discontinuous at t = {}", rational::format(t))));
            }
        }
        Ok(Self { breakpoints, pieces })
    }

    /// Fits a degree-≤`degree` polynomial on each interval from samples of
    /// `f` at `degree + 1` equally spaced interior nodes.
    pub fn interpolate<F>(breakpoints: Vec<Rational>, degree: usize, mut f: F) -> Result<Self, GeometryError>
    where
        F: FnMut(&Rational) -> Result<Rational, GeometryError>,
    {
        let mut pieces = Vec::with_capacity(breakpoints.len().saturating_sub(1));
        let steps = rational::int(degree as i64 + 2);
        for w in breakpoints.windows(2) {
            let width = &w[1] - &w[0];
            let nodes: Vec<Rational> = (1..=degree as i64 + 1)
                .map(|k| &w[0] + &width * rational::int(k) / &steps)
                .collect();
            let values = nodes.iter().map(&mut f).collect::<Result<Vec<_>, _>>()?;
            let vandermonde: linalg::Matrix = nodes
                .iter()
                .map(|x| {
                    std::iter::successors(Some(Rational::one()), |p| Some(p * x))
                        .take(degree + 1)
                        .collect()
                })
                .collect();
            let coeffs = linalg::solve(&vandermonde, &values).expect("distinct nodes give an invertible system");
            pieces.push(coeffs);
        }
        Self::new(breakpoints, pieces)
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Vec<Rational>] {
        &self.pieces
    }

    pub fn start(&self) -> &Rational {
        &self.breakpoints[0]
    }

    pub fn end(&self) -> &Rational {
        self.breakpoints.last().expect("at least two breakpoints")
    }

    /// Value at `t`, or `None` outside the domain.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        if t < self.start() || t > self.end() {
            return None;
        }
        let i = self.breakpoints[1..].iter().position(|b| t <= b).expect("t within domain");
        Some(horner(&self.pieces[i], t))
    }

    /// `∫` over the whole domain.
    pub fn integral(&self) -> Rational {
        self.pieces
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(p, w)| definite_integral(p, &w[0], &w[1]))
            .sum()
    }

    pub fn degree(&self) -> usize {
        self.pieces
            .iter()
            .map(|p| p.iter().rposition(|c| !c.is_zero()).unwrap_or(0))
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio, to_rational_vec};

    #[test]
    fn interpolation_recovers_polynomials() {
        // 8 − t² then (4 − t)²
        let f = |t: &Rational| -> Result<Rational, GeometryError> {
            Ok(if *t <= int(2) {
                int(8) - t * t
            } else {
                (int(4) - t) * (int(4) - t)
            })
        };
        let p = PiecewisePolynomial::interpolate(to_rational_vec(&[0, 2, 4]), 2, f).unwrap();
        assert_eq!(p.pieces()[0], to_rational_vec(&[8, 0, -1]));
        assert_eq!(p.pieces()[1], to_rational_vec(&[16, -8, 1]));
        assert_eq!(p.integral(), int(16));
        assert_eq!(p.eval(&ratio(3, 1)), Some(int(1)));
        assert_eq!(p.eval(&int(5)), None);
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn rejects_discontinuity_and_bad_breakpoints() {
        let pieces = vec![to_rational_vec(&[1]), to_rational_vec(&[2])];
        assert!(PiecewisePolynomial::new(to_rational_vec(&[0, 1, 2]), pieces).is_err());
        assert!(PiecewisePolynomial::new(to_rational_vec(&[0, 0]), vec![to_rational_vec(&[1])]).is_err());
        assert!(PiecewisePolynomial::new(to_rational_vec(&[0]), vec![]).is_err());
    }
}
