//! Volume and barycentre via a fixed pulling triangulation.
//!
//! Each face is coned from its lexicographically smallest vertex over the
//! triangulations of those of its facets that miss that vertex. Vertices are
//! stored in lexicographic order, so the apex of a face is simply its
//! lowest vertex index and the triangulation is deterministic.

use super::{GeometryError, Polytope};
use crate::linalg;
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

impl Polytope {
    /// Simplices (as vertex-index lists of length d+1) of the canonical
    /// triangulation. Empty unless the polytope is full-dimensional.
    pub fn triangulation(&self) -> Vec<Vec<usize>> {
        if !self.is_full_dimensional() {
            return Vec::new();
        }
        let facet_sets: Vec<Vec<usize>> = self
            .facets()
            .iter()
            .map(|h| {
                (0..self.vertices().len())
                    .filter(|&i| h.slack(&self.vertices()[i]).is_zero())
                    .collect()
            })
            .collect();
        let all: Vec<usize> = (0..self.vertices().len()).collect();
        triangulate(self.vertices(), &facet_sets, &all, self.dim())
    }

    /// Exact d-dimensional volume; 0 for lower-dimensional or empty polytopes.
    pub fn volume(&self) -> Rational {
        let (vol, _) = self.weighted_simplices();
        vol
    }

    /// Exact centroid of the solid polytope.
    pub fn barycentre(&self) -> Result<Vec<Rational>, GeometryError> {
        let (vol, moment) = self.weighted_simplices();
        if vol.is_zero() {
            return Err(GeometryError::ZeroVolume);
        }
        Ok(moment.iter().map(|x| x / &vol).collect())
    }

    /// Total volume and first moment `Σ vol(s) · centroid(s)`.
    fn weighted_simplices(&self) -> (Rational, Vec<Rational>) {
        let d = self.dim();
        let mut vol = Rational::zero();
        let mut moment = vec![Rational::zero(); d];
        let fact = Rational::from_integer((1..=d).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)));
        let verts = self.vertices();
        for simplex in self.triangulation() {
            let apex = &verts[simplex[0]];
            let rows: linalg::Matrix = simplex[1..].iter().map(|&i| linalg::sub(&verts[i], apex)).collect();
            let v = linalg::determinant(&rows).abs() / &fact;
            let weight = &v / rational::int(d as i64 + 1);
            for &i in &simplex {
                for (m, x) in moment.iter_mut().zip(&verts[i]) {
                    *m += &weight * x;
                }
            }
            vol += v;
        }
        (vol, moment)
    }
}

fn triangulate(verts: &[Vec<Rational>], facet_sets: &[Vec<usize>], face: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![face[0]]];
    }
    let apex = face[0];
    let subfaces: BTreeSet<Vec<usize>> = facet_sets
        .iter()
        .filter_map(|g| {
            let s: Vec<usize> = face.iter().copied().filter(|i| g.binary_search(i).is_ok()).collect();
            let refs: Vec<&Vec<Rational>> = s.iter().map(|&i| &verts[i]).collect();
            (linalg::affine_rank(&refs) == Some(k - 1)).then_some(s)
        })
        .collect();
    let mut out = Vec::new();
    for s in subfaces.iter().filter(|s| s.binary_search(&apex).is_err()) {
        for mut simplex in triangulate(verts, facet_sets, s, k - 1) {
            simplex.insert(0, apex);
            out.push(simplex);
        }
    }
    out
}
