use super::{GeometryError, Halfspace, Polytope};
use crate::combinatorics::Combinations;
use crate::linalg::{self, Matrix};
use crate::rational::{self, Rational};
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// Largest facet list accepted by [`Polytope::from_halfspaces`].
pub const MAX_FACETS: usize = 64;
/// Largest distinct point set accepted by [`Polytope::hull`].
pub const MAX_HULL_POINTS: usize = 64;

enum Region {
    Empty,
    Unbounded,
    Bounded(Vec<Vec<Rational>>),
}

impl Polytope {
    /// Convex hull of a nonempty point list. Lower-dimensional hulls are
    /// allowed and carry their affine dimension.
    pub fn hull(points: &[Vec<Rational>]) -> Result<Polytope, GeometryError> {
        let first = points.first().ok_or(GeometryError::EmptyInput)?;
        let d = first.len();
        if d == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        if let Some(p) = points.iter().find(|p| p.len() != d) {
            return Err(GeometryError::DimensionMismatch { expected: d, got: p.len() });
        }
        let pts: Vec<Vec<Rational>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if pts.len() > MAX_HULL_POINTS {
            return Err(GeometryError::TooLarge {
                what: "hull points",
                count: pts.len(),
                limit: MAX_HULL_POINTS,
            });
        }
        Ok(from_points(d, pts))
    }

    /// Intersection of halfspaces. Vertices are found by solving every
    /// d-subset of bounding hyperplanes and keeping feasible solutions.
    pub fn from_halfspaces(halfspaces: &[Halfspace]) -> Result<Polytope, GeometryError> {
        if halfspaces.len() > MAX_FACETS {
            return Err(GeometryError::TooLarge {
                what: "halfspaces",
                count: halfspaces.len(),
                limit: MAX_FACETS,
            });
        }
        intersect(halfspaces)
    }

    /// `P ∩ h`. The result may be empty or lower-dimensional.
    pub fn clip(&self, h: &Halfspace) -> Result<Polytope, GeometryError> {
        if h.dim() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                got: h.dim(),
            });
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        if self.vertices.iter().all(|v| h.contains(v)) {
            return Ok(self.clone());
        }
        let mut hs = self.facets.clone();
        hs.push(h.clone());
        match intersect(&hs) {
            Err(GeometryError::Empty) => Ok(Polytope::empty(self.dim)),
            other => other,
        }
    }
}

fn intersect(halfspaces: &[Halfspace]) -> Result<Polytope, GeometryError> {
    let first = halfspaces.first().ok_or(GeometryError::EmptyInput)?;
    let d = first.dim();
    if d == 0 {
        return Err(GeometryError::ZeroDimension);
    }
    for h in halfspaces {
        if h.dim() != d {
            return Err(GeometryError::DimensionMismatch { expected: d, got: h.dim() });
        }
        if h.normal.iter().all(Zero::is_zero) {
            return Err(GeometryError::ZeroNormal);
        }
    }
    let hs: Vec<Halfspace> = halfspaces
        .iter()
        .map(Halfspace::canonical)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let vertices = match classify(&hs, d) {
        Region::Empty => return Err(GeometryError::Empty),
        Region::Unbounded => return Err(GeometryError::Unbounded),
        Region::Bounded(v) => v,
    };
    let refs: Vec<&Vec<Rational>> = vertices.iter().collect();
    if linalg::affine_rank(&refs) == Some(d) {
        // Full-dimensional: the facets are the inputs supporting a (d-1)-face.
        let facets: Vec<Halfspace> = hs
            .into_iter()
            .filter(|h| {
                let tight: Vec<&Vec<Rational>> = vertices.iter().filter(|v| h.slack(v).is_zero()).collect();
                linalg::affine_rank(&tight) == Some(d - 1)
            })
            .collect();
        Ok(Polytope {
            dim: d,
            vertices,
            facets,
            affine_dim: Some(d),
        })
    } else {
        Ok(from_points(d, vertices))
    }
}

fn classify(hs: &[Halfspace], d: usize) -> Region {
    let normals: Matrix = hs.iter().map(|h| h.normal.clone()).collect();
    let (_, pivots) = linalg::rref(&normals, d);
    if pivots.len() < d {
        // The region contains lines; decide feasibility on the pivot coordinates.
        let reduced: Vec<Halfspace> = hs
            .iter()
            .map(|h| Halfspace {
                normal: pivots.iter().map(|&c| h.normal[c].clone()).collect(),
                offset: h.offset.clone(),
            })
            .collect();
        return if enumerate_vertices(&reduced, pivots.len()).is_empty() {
            Region::Empty
        } else {
            Region::Unbounded
        };
    }
    let vertices = enumerate_vertices(hs, d);
    if vertices.is_empty() {
        // A nonempty pointed polyhedron always has a vertex.
        return Region::Empty;
    }
    if has_recession_ray(&normals, d) {
        return Region::Unbounded;
    }
    Region::Bounded(vertices)
}

fn enumerate_vertices(hs: &[Halfspace], d: usize) -> Vec<Vec<Rational>> {
    let mut found = BTreeSet::new();
    for combo in Combinations::new(hs.len(), d) {
        let a: Matrix = combo.iter().map(|&i| hs[i].normal.clone()).collect();
        let b: Vec<Rational> = combo.iter().map(|&i| hs[i].offset.clone()).collect();
        if let Some(x) = linalg::solve(&a, &b) {
            if !found.contains(&x) && hs.iter().all(|h| h.contains(&x)) {
                found.insert(x);
            }
        }
    }
    found.into_iter().collect()
}

/// Whether the cone `{y : N y ≥ 0}` (assumed pointed) contains a nonzero ray.
/// Any extreme ray is cut out by d-1 independent tight rows.
fn has_recession_ray(normals: &Matrix, d: usize) -> bool {
    for combo in Combinations::new(normals.len(), d - 1) {
        let rows: Matrix = combo.iter().map(|&i| normals[i].clone()).collect();
        let ns = linalg::null_space(&rows, d);
        if ns.len() != 1 {
            continue;
        }
        let y = &ns[0];
        let signs: Vec<Rational> = normals.iter().map(|n| rational::dot(n, y)).collect();
        if signs.iter().all(|s| !s.is_negative()) || signs.iter().all(|s| !s.is_positive()) {
            return true;
        }
    }
    false
}

/// Canonical polytope from a sorted, deduplicated nonempty point list.
fn from_points(d: usize, pts: Vec<Vec<Rational>>) -> Polytope {
    let p0 = pts[0].clone();
    let dirs: Matrix = pts[1..].iter().map(|p| linalg::sub(p, &p0)).collect();
    let (dir_basis, pivots) = linalg::rref(&dirs, d);
    let k = pivots.len();

    // Affine-hull equations from the canonical basis of the orthogonal complement.
    let eq_normals: Matrix = linalg::null_space(&dir_basis, d)
        .into_iter()
        .map(|w| rational::primitive_integer(&w).0.into_iter().map(rational::from_bigint).collect())
        .collect();
    let mut facets = Vec::new();
    for w in &eq_normals {
        let c = rational::dot(&p0, w);
        facets.push(Halfspace {
            normal: w.clone(),
            offset: c.clone(),
        });
        facets.push(Halfspace {
            normal: w.iter().map(|x| -x).collect(),
            offset: -c,
        });
    }

    // Pivot coordinates give an affine isomorphism of the hull onto R^k.
    let projected: Vec<Vec<Rational>> = pts.iter().map(|p| pivots.iter().map(|&c| p[c].clone()).collect()).collect();
    let (rel_facets, is_vertex) = full_hull(k, &projected);
    let gram_inv = if eq_normals.is_empty() {
        None
    } else {
        let gram: Matrix = eq_normals
            .iter()
            .map(|a| eq_normals.iter().map(|b| rational::dot(a, b)).collect())
            .collect();
        linalg::inverse(&gram)
    };
    for (nk, off) in rel_facets {
        let mut n = vec![Rational::zero(); d];
        for (j, &c) in pivots.iter().enumerate() {
            n[c] = nk[j].clone();
        }
        let mut offset = off;
        if let Some(gi) = &gram_inv {
            // Drop the component along the equations so the normal lies in the hull's direction space.
            let coeffs = linalg::mat_vec(gi, &linalg::mat_vec(&eq_normals, &n));
            let mut along = vec![Rational::zero(); d];
            for (w, c) in eq_normals.iter().zip(&coeffs) {
                along = linalg::add(&along, &linalg::scale(w, c));
            }
            offset -= rational::dot(&p0, &along);
            n = linalg::sub(&n, &along);
        }
        facets.push(Halfspace { normal: n, offset }.canonical());
    }
    facets.sort();
    facets.dedup();
    let vertices = pts.into_iter().zip(is_vertex).filter(|(_, v)| *v).map(|(p, _)| p).collect();
    Polytope {
        dim: d,
        vertices,
        facets,
        affine_dim: Some(k),
    }
}

/// Facets `(normal, offset)` and extreme-point flags of a full-dimensional
/// point set in R^k.
fn full_hull(k: usize, pts: &[Vec<Rational>]) -> (Vec<(Vec<Rational>, Rational)>, Vec<bool>) {
    match k {
        0 => (Vec::new(), vec![true; pts.len()]),
        1 => {
            let lo = pts.iter().map(|p| &p[0]).min().unwrap().clone();
            let hi = pts.iter().map(|p| &p[0]).max().unwrap().clone();
            let flags = pts.iter().map(|p| p[0] == lo || p[0] == hi).collect();
            (vec![(vec![rational::int(1)], lo), (vec![rational::int(-1)], -hi)], flags)
        }
        _ => {
            let mut facets: BTreeSet<Halfspace> = BTreeSet::new();
            for combo in Combinations::new(pts.len(), k) {
                let base = &pts[combo[0]];
                let rows: Matrix = combo[1..].iter().map(|&i| linalg::sub(&pts[i], base)).collect();
                let ns = linalg::null_space(&rows, k);
                if ns.len() != 1 {
                    continue;
                }
                let mut n = ns.into_iter().next().unwrap();
                let slacks: Vec<Rational> = pts.iter().map(|p| rational::dot(&linalg::sub(p, base), &n)).collect();
                if slacks.iter().all(|s| !s.is_negative()) {
                } else if slacks.iter().all(|s| !s.is_positive()) {
                    n = n.iter().map(|x| -x).collect();
                } else {
                    continue;
                }
                let offset = rational::dot(base, &n);
                facets.insert(Halfspace { normal: n, offset }.canonical());
            }
            let flags = pts
                .iter()
                .map(|p| {
                    let tight: Matrix = facets.iter().filter(|h| h.slack(p).is_zero()).map(|h| h.normal.clone()).collect();
                    linalg::rank(&tight, k) == k
                })
                .collect();
            (facets.into_iter().map(|h| (h.normal, h.offset)).collect(), flags)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn pts(raw: &[&[i64]]) -> Vec<Vec<Rational>> {
        raw.iter().map(|p| rational::to_rational_vec(p)).collect()
    }

    fn hs(normal: &[i64], offset: i64) -> Halfspace {
        Halfspace::from_ints(normal, int(offset)).unwrap()
    }

    #[test]
    fn hull_of_triangle() {
        let p = Polytope::hull(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.facets().len(), 3);
        assert!(p.is_full_dimensional());
    }

    #[test]
    fn hull_drops_interior_point() {
        let p = Polytope::hull(&pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1]])).unwrap();
        assert_eq!(p.vertices(), &pts(&[&[0, 0], &[0, 2], &[2, 0], &[2, 2]])[..]);
        assert_eq!(p.facets().len(), 4);
    }

    #[test]
    fn hull_dimension_mismatch() {
        let err = Polytope::hull(&[vec![int(0)], vec![int(0), int(1)]]).unwrap_err();
        assert!(matches!(err, GeometryError::DimensionMismatch { .. }));
    }

    #[test]
    fn lower_dimensional_hull() {
        let seg = Polytope::hull(&pts(&[&[0, 0, 0], &[1, 1, 1], &[2, 2, 2]])).unwrap();
        assert_eq!(seg.affine_dim(), Some(1));
        assert_eq!(seg.vertices().len(), 2);
        // two equations (as pairs) plus the two endpoints
        assert_eq!(seg.facets().len(), 6);
        assert!(seg.contains(&[int(1), int(1), int(1)]));
        assert!(!seg.contains(&[int(1), int(1), int(2)]));
        let point = Polytope::hull(&pts(&[&[3, -1]])).unwrap();
        assert_eq!(point.affine_dim(), Some(0));
        assert_eq!(point.facets().len(), 4);
    }

    #[test]
    fn halfspace_triangle() {
        let p = Polytope::from_halfspaces(&[hs(&[1, 0], 0), hs(&[0, 1], 0), hs(&[-1, -1], -2)]).unwrap();
        assert_eq!(p, Polytope::hull(&pts(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap());
    }

    #[test]
    fn unbounded_and_empty_are_distinguished() {
        assert_eq!(
            Polytope::from_halfspaces(&[hs(&[1, 0], 0), hs(&[0, 1], 0)]),
            Err(GeometryError::Unbounded)
        );
        assert_eq!(Polytope::from_halfspaces(&[hs(&[1], 1), hs(&[-1], 0)]), Err(GeometryError::Empty));
        assert_eq!(Polytope::from_halfspaces(&[hs(&[1, 0], 0)]), Err(GeometryError::Unbounded));
        assert_eq!(
            Polytope::from_halfspaces(&[hs(&[1, 0], 1), hs(&[-1, 0], 0)]),
            Err(GeometryError::Empty)
        );
    }

    #[test]
    fn degenerate_halfspace_region() {
        let p = Polytope::from_halfspaces(&[hs(&[1, 0], 0), hs(&[-1, 0], 0), hs(&[0, 1], 0), hs(&[0, -1], -1)]).unwrap();
        assert_eq!(p.affine_dim(), Some(1));
        assert_eq!(p.vertices(), &pts(&[&[0, 0], &[0, 1]])[..]);
    }

    #[test]
    fn too_many_facets_rejected() {
        let many: Vec<Halfspace> = (0..65).map(|i| hs(&[1, i], -1000)).collect();
        assert!(matches!(Polytope::from_halfspaces(&many), Err(GeometryError::TooLarge { .. })));
    }

    #[test]
    fn clip_square() {
        let sq = Polytope::hull(&pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]])).unwrap();
        let corner = sq.clip(&hs(&[1, 1], 3)).unwrap();
        assert_eq!(corner.vertices(), &pts(&[&[1, 2], &[2, 1], &[2, 2]])[..]);
        assert_eq!(sq.clip(&hs(&[1, 0], -1)).unwrap(), sq);
        assert!(sq.clip(&hs(&[1, 1], 5)).unwrap().is_empty());
        let edge = sq.clip(&hs(&[1, 1], 4)).unwrap();
        assert_eq!(edge.affine_dim(), Some(0));
    }

    #[test]
    fn support_extrema_examples() {
        let sq = Polytope::hull(&pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]])).unwrap();
        assert_eq!(sq.support_extrema(&[int(1), int(1)]).unwrap(), (int(0), int(4)));
        let tri = Polytope::hull(&pts(&[&[-1, -1], &[2, -1], &[-1, 2]])).unwrap();
        assert_eq!(tri.support_extrema(&[int(1), int(0)]).unwrap(), (int(-1), int(2)));
        assert_eq!(tri.support_extrema(&[int(2), int(0)]).unwrap(), (int(-2), int(4)));
        assert_eq!(tri.support_extrema(&[int(0), int(0)]), Err(GeometryError::ZeroDirection));
    }

    #[test]
    fn canonical_facets_are_primitive() {
        let p = Polytope::from_halfspaces(&[
            Halfspace::new(vec![ratio(1, 2), int(0)], int(0)).unwrap(),
            Halfspace::new(vec![int(0), int(3)], int(0)).unwrap(),
            Halfspace::new(vec![int(-2), int(-2)], int(-4)).unwrap(),
        ])
        .unwrap();
        assert!(p.facets().contains(&hs(&[1, 0], 0)));
        assert!(p.facets().contains(&hs(&[-1, -1], -2)));
    }
}
