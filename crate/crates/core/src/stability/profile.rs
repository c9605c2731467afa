//! Slab volumes `t ↦ d!·vol(P ∩ {⟨m,u⟩ ≥ c + t})` and the constant β.
//!
//! The slab volume is a polynomial of degree ≤ d between consecutive values
//! of `⟨vertex, u⟩`, so sampling d+1 points per interval pins it down
//! exactly.

use super::PiecewisePolynomial;
use crate::geometry::{GeometryError, Halfspace, Polytope};
use crate::rational::{self, Rational};
use num_traits::Zero;

fn factorial(d: usize) -> Rational {
    rational::int((1..=d as i64).product())
}

/// Profile of `P` cut by `⟨m,u⟩ ≥ offset + t`, starting at `t = min⟨P,u⟩ − offset`.
pub fn slab_profile(p: &Polytope, u: &[Rational], offset: &Rational) -> Result<PiecewisePolynomial, GeometryError> {
    if !p.is_full_dimensional() {
        return Err(GeometryError::ZeroVolume);
    }
    let mut levels: Vec<Rational> = p.vertices().iter().map(|v| rational::dot(v, u) - offset).collect();
    levels.sort();
    levels.dedup();
    let d = p.dim();
    let fact = factorial(d);
    PiecewisePolynomial::interpolate(levels, d, |t| {
        let h = Halfspace::new(u.to_vec(), offset + t)?;
        Ok(p.clip(&h)?.volume() * &fact)
    })
}

/// `∫ profile / Vol(P)` measured from the minimum of `⟨·,u⟩` on `P`.
pub fn slab_beta(p: &Polytope, u: &[Rational]) -> Result<Rational, GeometryError> {
    let (lo, _) = p.support_extrema(u)?;
    let f = slab_profile(p, u, &lo)?;
    let vol = f.eval(&Rational::zero()).expect("profile starts at 0");
    Ok(f.integral() / vol)
}

/// `⟨barycentre(P), u⟩ − min⟨P,u⟩`.
pub fn barycentre_beta(p: &Polytope, u: &[Rational]) -> Result<Rational, GeometryError> {
    let (lo, _) = p.support_extrema(u)?;
    Ok(rational::dot(&p.barycentre()?, u) - lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio, to_rational_vec};

    fn triangle() -> Polytope {
        Polytope::hull(&[to_rational_vec(&[-1, -1]), to_rational_vec(&[2, -1]), to_rational_vec(&[-1, 2])]).unwrap()
    }

    #[test]
    fn triangle_along_e1() {
        let u = to_rational_vec(&[1, 0]);
        let f = slab_profile(&triangle(), &u, &int(-1)).unwrap();
        assert_eq!(f.breakpoints(), &to_rational_vec(&[0, 3])[..]);
        assert_eq!(f.pieces()[0], to_rational_vec(&[9, -6, 1]));
        assert_eq!(slab_beta(&triangle(), &u).unwrap(), int(1));
        assert_eq!(barycentre_beta(&triangle(), &u).unwrap(), int(1));
    }

    #[test]
    fn lower_dimensional_rejected() {
        let seg = Polytope::hull(&[to_rational_vec(&[0, 0]), to_rational_vec(&[1, 1])]).unwrap();
        assert_eq!(slab_beta(&seg, &to_rational_vec(&[1, 0])), Err(GeometryError::ZeroVolume));
        assert_eq!(barycentre_beta(&seg, &to_rational_vec(&[1, 0])), Err(GeometryError::ZeroVolume));
    }

    #[test]
    fn interval() {
        let seg = Polytope::hull(&[to_rational_vec(&[0]), to_rational_vec(&[3])]).unwrap();
        assert_eq!(slab_beta(&seg, &to_rational_vec(&[1])).unwrap(), ratio(3, 2));
        assert_eq!(slab_beta(&seg, &to_rational_vec(&[-2])).unwrap(), int(3));
    }
}
