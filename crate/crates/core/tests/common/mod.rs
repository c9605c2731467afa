//! Oracles shared by the integration tests. None of them go through the
//! profile interpolation or the barycentre code they are compared with.
#![allow(dead_code)]

use kstab_core::rational::{int, ratio, to_rational_vec};
use kstab_core::{Halfspace, Polytope, Rational};
use num_traits::Zero;
use rand::Rng;

pub fn factorial(d: usize) -> Rational {
    int((1..=d as i64).product())
}

/// `d!·vol(P ∩ {⟨m,u⟩ ≥ lo + t})` by direct clipping.
pub fn slab_volume(p: &Polytope, u: &[Rational], lo: &Rational, t: &Rational) -> Rational {
    let h = Halfspace::new(u.to_vec(), lo + t).unwrap();
    p.clip(&h).unwrap().volume() * factorial(p.dim())
}

/// β by Simpson's rule between consecutive vertex levels; exact for slab
/// volumes of degree ≤ 3.
pub fn simpson_beta(p: &Polytope, u: &[Rational]) -> Rational {
    assert!(p.dim() <= 3, "Simpson's rule is exact only up to cubics");
    let mut levels: Vec<Rational> = p.vertices().iter().map(|v| kstab_core::rational::dot(v, u)).collect();
    levels.sort();
    levels.dedup();
    let lo = levels[0].clone();
    let f = |t: &Rational| slab_volume(p, u, &lo, t);
    let mut integral = Rational::zero();
    for w in levels.windows(2) {
        let (a, b) = (&w[0] - &lo, &w[1] - &lo);
        let mid = (&a + &b) / int(2);
        integral += (&b - &a) / int(6) * (f(&a) + int(4) * f(&mid) + f(&b));
    }
    integral / f(&Rational::zero())
}

/// Hull of random lattice points in `[-r, r]^d`, retried until full-dimensional.
pub fn random_polytope<R: Rng>(rng: &mut R, d: usize, r: i64) -> Polytope {
    loop {
        let n = rng.gen_range(d + 1..=d + 5);
        let pts: Vec<Vec<Rational>> = (0..n).map(|_| (0..d).map(|_| int(rng.gen_range(-r..=r))).collect()).collect();
        if let Ok(p) = Polytope::hull(&pts) {
            if p.is_full_dimensional() {
                return p;
            }
        }
    }
}

pub fn random_direction<R: Rng>(rng: &mut R, d: usize) -> Vec<Rational> {
    loop {
        let u: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
        if u.iter().any(|&x| x != 0) {
            return to_rational_vec(&u);
        }
    }
}

/// A product of random elementary and signed permutation matrices.
pub fn random_unimodular<R: Rng>(rng: &mut R, d: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..4 {
        let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
        if i != j {
            let k = rng.gen_range(-2..=2);
            let row = m[j].clone();
            for (a, b) in m[i].iter_mut().zip(row) {
                *a += k * b;
            }
        }
        if rng.gen_bool(0.3) {
            m.swap(i, j);
        }
        if rng.gen_bool(0.3) {
            m[i].iter_mut().for_each(|a| *a = -*a);
        }
    }
    m
}

pub fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 {
            return ratio(n, rng.gen_range(1..=bound));
        }
    }
}

/// Distinct primes of `n` by trial division.
pub fn primes_of(mut n: u64) -> Vec<u64> {
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

/// Fraction of `samples` uniform points of the bounding box inside `p`,
/// scaled to a volume, with its standard error.
pub fn monte_carlo_volume<R: Rng>(rng: &mut R, p: &Polytope, samples: usize) -> (f64, f64) {
    let d = p.dim();
    let to_f = kstab_core::rational::to_f64;
    let verts: Vec<Vec<f64>> = p.vertices().iter().map(|v| v.iter().map(to_f).collect()).collect();
    let lo: Vec<f64> = (0..d).map(|j| verts.iter().map(|v| v[j]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..d)
        .map(|j| verts.iter().map(|v| v[j]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let facets: Vec<(Vec<f64>, f64)> = p
        .facets()
        .iter()
        .map(|h| (h.normal.iter().map(to_f).collect(), to_f(&h.offset)))
        .collect();
    let boxvol: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    let mut x = vec![0.0; d];
    let mut inside = 0usize;
    for _ in 0..samples {
        for j in 0..d {
            x[j] = rng.gen_range(lo[j]..hi[j]);
        }
        if facets.iter().all(|(n, c)| n.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() >= *c) {
            inside += 1;
        }
    }
    let frac = inside as f64 / samples as f64;
    (frac * boxvol, boxvol * (frac * (1.0 - frac) / samples as f64).sqrt())
}
