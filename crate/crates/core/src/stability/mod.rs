//! Volume profiles, β, and the divisorial stability verdict on toric Fanos.
//!
//! For a nef divisor `L` and a toric valuation `u`, the pullback of `L` to
//! the star subdivision at `u` has `E_u`-coefficient `a_u = −min⟨P_L, u⟩`, so
//! `Vol(π*L − tE_u)` is the normalised volume of the slab of `P_L` where
//! `⟨m,u⟩ ≥ −a_u + t`. Integrating over `t` and dividing by `Vol(L)` gives
//! β(L, E_u), which also equals `⟨barycentre(P_L), u⟩ + a_u`.

mod piecewise;
mod profile;
mod verdict;

pub use piecewise::PiecewisePolynomial;
pub use profile::{barycentre_beta, slab_beta, slab_profile};
pub use verdict::{
    search_destabilizer, verdict, verdict_with, Decimals, SearchOutcome, SearchReport, StabilityReport, Verdict, DREAMY_ASSUMPTION,
};

use crate::geometry::{GeometryError, Halfspace};
use crate::toric::{ToricDivisor, ToricError, ToricFano, ToricValuation};
use num_traits::Zero;

/// Polytope of `L`, the direction `u`, and the offset `−a_u` of the slabs.
fn slab_data(
    x: &ToricFano,
    l: &ToricDivisor,
    v: &ToricValuation,
) -> Result<(crate::Polytope, Vec<crate::Rational>, crate::Rational), ToricError> {
    x.check_nef(l)?;
    let p = x.section_polytope(l)?;
    if !p.is_full_dimensional() {
        return Err(GeometryError::ZeroVolume.into());
    }
    let offset = -x.pullback_coefficient(l, v.vector())?;
    let u = v.as_rational();
    debug_assert_eq!(p.support_extrema(&u)?.0, offset, "nef support function is the polytope minimum");
    Ok((p, u, offset))
}

/// `t ↦ Vol(π*L − tE_u)` for `t` from 0 to the pseudoeffective threshold.
/// `L` must be nef and big.
pub fn volume_profile(x: &ToricFano, l: &ToricDivisor, v: &ToricValuation) -> Result<PiecewisePolynomial, ToricError> {
    let (p, u, offset) = slab_data(x, l, v)?;
    Ok(slab_profile(&p, &u, &offset)?)
}

/// β(L, E_u) = `∫ Vol(π*L − tE_u) dt / Vol(L)`.
pub fn beta(x: &ToricFano, l: &ToricDivisor, v: &ToricValuation) -> Result<crate::Rational, ToricError> {
    let f = volume_profile(x, l, v)?;
    let vol = f.eval(&crate::Rational::zero()).expect("profile starts at 0");
    Ok(f.integral() / vol)
}

/// β through the barycentre of `P_L`; agrees with [`beta`].
pub fn beta_via_barycentre(x: &ToricFano, l: &ToricDivisor, v: &ToricValuation) -> Result<crate::Rational, ToricError> {
    let (p, u, _) = slab_data(x, l, v)?;
    Ok(barycentre_beta(&p, &u)?)
}

/// Whether `π*L − tE_u` is big, i.e. its slab is full-dimensional.
pub fn bigness_check(x: &ToricFano, l: &ToricDivisor, v: &ToricValuation, t: &crate::Rational) -> Result<bool, ToricError> {
    let (p, u, offset) = slab_data(x, l, v)?;
    let h = Halfspace::new(u, offset + t)?;
    Ok(p.clip(&h)?.is_full_dimensional())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, to_rational_vec};
    use crate::toric::fixtures;

    fn val(u: &[i64]) -> ToricValuation {
        ToricValuation::new(u.to_vec()).unwrap()
    }

    #[test]
    fn plane_profile_along_ray() {
        let x = fixtures::projective_plane();
        let f = volume_profile(&x, &x.anticanonical(), &val(&[1, 0])).unwrap();
        assert_eq!(f.breakpoints(), &to_rational_vec(&[0, 3])[..]);
        assert_eq!(f.pieces()[0], to_rational_vec(&[9, -6, 1]));
    }

    #[test]
    fn product_of_lines_profile() {
        let x = fixtures::product_of_lines();
        let f = volume_profile(&x, &x.anticanonical(), &val(&[1, 1])).unwrap();
        assert_eq!(f.breakpoints(), &to_rational_vec(&[0, 2, 4])[..]);
        assert_eq!(f.pieces()[0], to_rational_vec(&[8, 0, -1]));
        assert_eq!(f.pieces()[1], to_rational_vec(&[16, -8, 1]));
        assert_eq!(beta(&x, &x.anticanonical(), &val(&[1, 1])).unwrap(), int(2));
        assert_eq!(beta_via_barycentre(&x, &x.anticanonical(), &val(&[1, 1])).unwrap(), int(2));
    }

    #[test]
    fn projective_spaces_have_beta_one_along_rays() {
        for n in 1..=4 {
            let x = fixtures::projective_space(n);
            for r in x.fan().rays() {
                assert_eq!(beta(&x, &x.anticanonical(), &val(r)).unwrap(), int(1), "n = {n}, u = {r:?}");
            }
        }
    }

    #[test]
    fn bigness_threshold() {
        let x = fixtures::projective_plane();
        let (l, u) = (x.anticanonical(), val(&[1, 0]));
        assert!(bigness_check(&x, &l, &u, &int(0)).unwrap());
        assert!(bigness_check(&x, &l, &u, &int(1)).unwrap());
        assert!(!bigness_check(&x, &l, &u, &int(3)).unwrap());
    }

    #[test]
    fn requires_nef_and_big() {
        let x = fixtures::product_of_lines();
        let u = val(&[1, 0]);
        assert!(matches!(
            beta(&x, &ToricDivisor::from_ints(&[1, -2, 0, 0]), &u),
            Err(ToricError::NotNef { .. })
        ));
        assert!(matches!(
            beta(&x, &ToricDivisor::from_ints(&[1, -1, 0, 0]), &u),
            Err(ToricError::Geometry(GeometryError::ZeroVolume))
        ));
    }
}
