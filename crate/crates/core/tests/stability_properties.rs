mod common;

use common::{apply, random_direction, random_polytope, random_unimodular, simpson_beta, slab_volume};
use kstab_core::rational::{int, ratio};
use kstab_core::stability::{barycentre_beta, beta, beta_via_barycentre, bigness_check, slab_beta, verdict, volume_profile, Verdict};
use kstab_core::toric::{fixtures, primitive_vectors, ToricValuation};
use kstab_core::Rational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn val(u: &[i64]) -> ToricValuation {
    ToricValuation::new(u.to_vec()).unwrap()
}

#[test]
fn pipelines_agree_on_random_polytopes() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..100 {
        let d = 2 + i % 2;
        let p = random_polytope(&mut rng, d, 4);
        let u = random_direction(&mut rng, d);
        let slab = slab_beta(&p, &u).unwrap();
        assert_eq!(slab, barycentre_beta(&p, &u).unwrap(), "instance {i}");
        assert_eq!(slab, simpson_beta(&p, &u), "instance {i}");
    }
}

#[test]
fn pipelines_agree_on_fixtures() {
    for x in fixtures::all() {
        for u in primitive_vectors(x.dim(), 1).iter().chain(x.fan().rays()) {
            let l = x.anticanonical();
            assert_eq!(
                beta(&x, &l, &val(u)).unwrap(),
                beta_via_barycentre(&x, &l, &val(u)).unwrap(),
                "{u:?}"
            );
        }
    }
}

#[test]
fn plane_along_the_diagonal_against_slab_oracle() {
    let x = fixtures::projective_plane();
    let p = x.section_polytope(&x.anticanonical()).unwrap();
    let u = kstab_core::rational::to_rational_vec(&[1, 1]);
    // The triangle (-1,-1), (2,-1), (-1,2) has ⟨·,(1,1)⟩ from -2 to 1.
    assert_eq!(simpson_beta(&p, &u), int(2));
    let r = verdict(&x, &val(&[1, 1])).unwrap();
    assert_eq!(r.beta, int(2));
    assert_eq!(r.log_discrepancy, int(2));
    assert!(r.fujita_margin.is_zero());
    assert_eq!(r.verdict, Verdict::Destabilizing);
}

#[test]
fn hypersurfaces_summing_to_anticanonical() {
    // -K of P^n is the sum of q = n+1 linearly equivalent coordinate
    // hyperplanes, so each has β = q/(n+1).
    for n in 1..=4 {
        let x = fixtures::projective_space(n);
        for r in x.fan().rays() {
            assert_eq!(beta(&x, &x.anticanonical(), &val(r)).unwrap(), ratio(n as i64 + 1, n as i64 + 1));
        }
    }
}

#[test]
fn profile_sanity_on_fixtures() {
    for x in fixtures::all() {
        let l = x.anticanonical();
        let vol = x.volume(&l).unwrap();
        for u in primitive_vectors(x.dim(), 1) {
            let f = volume_profile(&x, &l, &val(&u)).unwrap();
            assert_eq!(f.eval(&Rational::zero()).unwrap(), vol);
            assert!(f.eval(f.end()).unwrap().is_zero());
            let p = x.section_polytope(&l).unwrap();
            let ur = kstab_core::rational::to_rational_vec(&u);
            let lo = p.support_extrema(&ur).unwrap().0;
            let mut previous: Option<Rational> = None;
            for w in f.breakpoints().windows(2) {
                for k in 1..=3 {
                    let t = &w[0] + (&w[1] - &w[0]) * ratio(k, 4);
                    let got = f.eval(&t).unwrap();
                    assert_eq!(got, slab_volume(&p, &ur, &lo, &t), "u = {u:?}, t = {t}");
                    if let Some(prev) = &previous {
                        assert!(got <= *prev, "profile increases at t = {t}");
                    }
                    previous = Some(got);
                }
                // continuity at every interior breakpoint
                assert_eq!(f.eval(&w[1]).unwrap(), slab_volume(&p, &ur, &lo, &w[1]));
            }
        }
    }
}

#[test]
fn bigness_switches_off_at_the_last_breakpoint() {
    for x in fixtures::all() {
        let l = x.anticanonical();
        for u in primitive_vectors(x.dim(), 1) {
            let v = val(&u);
            let tau = volume_profile(&x, &l, &v).unwrap().end().clone();
            for t in [Rational::zero(), &tau / int(2), &tau - ratio(1, 1000)] {
                assert!(bigness_check(&x, &l, &v, &t).unwrap(), "t = {t} < τ = {tau}");
            }
            for t in [tau.clone(), &tau + ratio(1, 1000), &tau + int(1)] {
                assert!(!bigness_check(&x, &l, &v, &t).unwrap(), "t = {t} ≥ τ = {tau}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn beta_scales_linearly(which in 0usize..5, ui in 0usize..26, num in 1i64..=9, den in 1i64..=9) {
        let x = fixtures::all().swap_remove(which);
        let dirs = primitive_vectors(x.dim(), 1);
        let v = val(&dirs[ui % dirs.len()]);
        let lambda = ratio(num, den);
        let l = x.anticanonical();
        prop_assert_eq!(beta(&x, &l.scaled(&lambda), &v).unwrap(), &lambda * beta(&x, &l, &v).unwrap());
    }

    #[test]
    fn verdict_is_unimodular_invariant(which in 0usize..5, ui in 0usize..26, seed in any::<u64>()) {
        let x = fixtures::all().swap_remove(which);
        let dirs = primitive_vectors(x.dim(), 1);
        let u = &dirs[ui % dirs.len()];
        let m = random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), x.dim());
        let y = x.transform(&m).unwrap();
        let (a, b) = (verdict(&x, &val(u)).unwrap(), verdict(&y, &val(&apply(&m, u))).unwrap());
        prop_assert_eq!(a.beta, b.beta);
        prop_assert_eq!(a.log_discrepancy, b.log_discrepancy);
        prop_assert_eq!(a.fujita_margin, b.fujita_margin);
        prop_assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn beta_is_positive_and_below_width(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_polytope(&mut rng, 2, 4);
        let u = random_direction(&mut rng, 2);
        let (lo, hi) = p.support_extrema(&u).unwrap();
        let b = slab_beta(&p, &u).unwrap();
        prop_assert!(b > Rational::zero() && b < &hi - &lo);
    }
}
