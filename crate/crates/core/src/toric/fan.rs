use super::ToricError;
use crate::linalg::{self, Matrix};
use crate::rational::{self, Rational};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// A codimension-one cone shared by two maximal cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    /// Sorted ray indices spanning the wall.
    pub rays: Vec<usize>,
    /// The two maximal cones meeting along the wall.
    pub cones: [usize; 2],
    /// For each cone, its ray not on the wall.
    pub opposite: [usize; 2],
}

/// Complete simplicial fan in `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
    walls: Vec<Wall>,
    // Inverse of the matrix whose rows are the cone's rays.
    inverses: Vec<Matrix>,
}

impl Fan {
    /// Validates primitivity, simpliciality, proper intersection and
    /// completeness.
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Fan, ToricError> {
        if dim == 0 {
            return Err(ToricError::Malformed("fan dimension must be at least 1".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(ToricError::DimensionMismatch {
                    expected: dim,
                    got: r.len(),
                });
            }
            if r.iter().all(|&x| x == 0) {
                return Err(ToricError::Malformed(format!("ray {i} is zero")));
            }
            if r.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
                return Err(ToricError::NotPrimitive(r.clone()));
            }
            if rays[..i].contains(r) {
                return Err(ToricError::Malformed(format!("ray {r:?} listed twice")));
            }
        }
        let mut sorted_cones = Vec::with_capacity(cones.len());
        for (c, cone) in cones.iter().enumerate() {
            let mut s = cone.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != dim || cone.len() != dim {
                return Err(ToricError::NotSimplicial {
                    cone: c,
                    rays: cone.len(),
                    dim,
                });
            }
            if let Some(&bad) = s.iter().find(|&&i| i >= rays.len()) {
                return Err(ToricError::Malformed(format!("cone {c} references missing ray {bad}")));
            }
            if sorted_cones.contains(&s) {
                return Err(ToricError::Malformed(format!("cone {c} listed twice")));
            }
            sorted_cones.push(s);
        }
        if sorted_cones.is_empty() {
            return Err(ToricError::NotComplete("fan has no maximal cones".into()));
        }
        if let Some(unused) = (0..rays.len()).find(|i| !sorted_cones.iter().any(|c| c.contains(i))) {
            return Err(ToricError::Malformed(format!("ray {unused} lies on no maximal cone")));
        }
        let mut inverses = Vec::with_capacity(sorted_cones.len());
        for (c, cone) in sorted_cones.iter().enumerate() {
            let m: Matrix = cone.iter().map(|&i| rational::to_rational_vec(&rays[i])).collect();
            inverses.push(linalg::inverse(&m).ok_or(ToricError::DependentRays { cone: c })?);
        }
        let mut fan = Fan {
            dim,
            rays,
            cones: sorted_cones,
            walls: Vec::new(),
            inverses,
        };
        fan.walls = fan.check_walls()?;
        fan.check_no_overlap()?;
        Ok(fan)
    }

    /// Every (d-1)-face must lie on exactly two maximal cones, on opposite
    /// sides. Together with a single-covered interior point this makes the
    /// cones tile R^d.
    fn check_walls(&self) -> Result<Vec<Wall>, ToricError> {
        let mut incidence: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, cone) in self.cones.iter().enumerate() {
            for skip in 0..self.dim {
                let face: Vec<usize> = cone.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &r)| r).collect();
                incidence.entry(face).or_default().push((c, cone[skip]));
            }
        }
        let mut walls = Vec::with_capacity(incidence.len());
        for (face, users) in incidence {
            if users.len() != 2 {
                let what = if users.len() == 1 {
                    "boundary of the support"
                } else {
                    "shared by more than two cones"
                };
                return Err(ToricError::NotComplete(format!(
                    "wall spanned by rays {face:?} lies on {} maximal cone(s) ({what})",
                    users.len()
                )));
            }
            let rows: Matrix = face.iter().map(|&i| rational::to_rational_vec(&self.rays[i])).collect();
            let normal = linalg::null_space(&rows, self.dim).remove(0);
            let side = |r: usize| rational::dot(&normal, &rational::to_rational_vec(&self.rays[r]));
            let (a, b) = (side(users[0].1), side(users[1].1));
            if (a.is_positive() && b.is_positive()) || (a.is_negative() && b.is_negative()) {
                return Err(ToricError::ImproperIntersection(format!(
                    "cones {} and {} lie on the same side of wall {face:?}",
                    users[0].0, users[1].0
                )));
            }
            walls.push(Wall {
                rays: face,
                cones: [users[0].0, users[1].0],
                opposite: [users[0].1, users[1].1],
            });
        }
        Ok(walls)
    }

    fn check_no_overlap(&self) -> Result<(), ToricError> {
        let p: Vec<Rational> = (0..self.dim)
            .map(|j| self.cones[0].iter().map(|&i| rational::int(self.rays[i][j])).sum())
            .collect();
        for c in 1..self.cones.len() {
            if self.coordinates_in(c, &p).iter().all(|x| !x.is_negative()) {
                return Err(ToricError::ImproperIntersection(format!("cones 0 and {c} overlap")));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// Maximal cones as sorted ray-index lists.
    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn ray_index(&self, u: &[i64]) -> Option<usize> {
        self.rays.iter().position(|r| r == u)
    }

    /// Coefficients of `u` in the ray basis of cone `c`.
    pub(crate) fn coordinates_in(&self, c: usize, u: &[Rational]) -> Vec<Rational> {
        let inv = &self.inverses[c];
        (0..self.dim).map(|j| (0..self.dim).map(|i| &u[i] * &inv[i][j]).sum()).collect()
    }

    /// First maximal cone containing `u`, with the coefficients of `u` in its rays.
    pub fn locate(&self, u: &[Rational]) -> Result<(usize, Vec<Rational>), ToricError> {
        if u.len() != self.dim {
            return Err(ToricError::DimensionMismatch {
                expected: self.dim,
                got: u.len(),
            });
        }
        (0..self.cones.len())
            .map(|c| (c, self.coordinates_in(c, u)))
            .find(|(_, lam)| lam.iter().all(|x| !x.is_negative()))
            .ok_or(ToricError::NotInSupport)
    }

    /// Evaluates the piecewise-linear function taking `values[ρ]` at ray ρ
    /// and linear on each maximal cone.
    pub fn piecewise_linear(&self, values: &[Rational], u: &[Rational]) -> Result<Rational, ToricError> {
        if values.len() != self.rays.len() {
            return Err(ToricError::CoefficientMismatch {
                expected: self.rays.len(),
                got: values.len(),
            });
        }
        let (c, lam) = self.locate(u)?;
        Ok(self.cones[c].iter().zip(&lam).map(|(&i, l)| l * &values[i]).sum())
    }

    /// The linear functional `m_σ` with `⟨m_σ, u_ρ⟩ = −a_ρ` on the rays of cone `c`.
    pub fn cone_character(&self, c: usize, coeffs: &[Rational]) -> Vec<Rational> {
        let rhs: Vec<Rational> = self.cones[c].iter().map(|&i| -coeffs[i].clone()).collect();
        linalg::mat_vec(&self.inverses[c], &rhs)
    }

    /// Star subdivision at the primitive vector `u`; the identity when `u`
    /// is already a ray. The new ray is appended last.
    pub fn star_subdivide(&self, u: &[i64]) -> Result<Fan, ToricError> {
        check_primitive(u, self.dim)?;
        if self.ray_index(u).is_some() {
            return Ok(self.clone());
        }
        let (c, lam) = self.locate(&rational::to_rational_vec(u))?;
        let tau: Vec<usize> = self.cones[c]
            .iter()
            .zip(&lam)
            .filter(|(_, l)| l.is_positive())
            .map(|(&i, _)| i)
            .collect();
        let new_ray = self.rays.len();
        let mut cones = Vec::new();
        for cone in &self.cones {
            if tau.iter().all(|t| cone.contains(t)) {
                for &t in &tau {
                    let mut nc: Vec<usize> = cone.iter().copied().filter(|&i| i != t).collect();
                    nc.push(new_ray);
                    cones.push(nc);
                }
            } else {
                cones.push(cone.clone());
            }
        }
        let mut rays = self.rays.clone();
        rays.push(u.to_vec());
        Fan::new(self.dim, rays, cones)
    }

    /// Image of the fan under an integer matrix acting on column vectors.
    /// The matrix must be unimodular for the result to be a fan.
    pub fn transform(&self, m: &[Vec<i64>]) -> Result<Fan, ToricError> {
        let rays = self.rays.iter().map(|r| apply(m, r)).collect();
        Fan::new(self.dim, rays, self.cones.clone())
    }
}

pub(crate) fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub(crate) fn check_primitive(u: &[i64], dim: usize) -> Result<(), ToricError> {
    if u.len() != dim {
        return Err(ToricError::DimensionMismatch {
            expected: dim,
            got: u.len(),
        });
    }
    if u.iter().all(|&x| x == 0) {
        return Err(ToricError::ZeroVector);
    }
    if u.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
        return Err(ToricError::NotPrimitive(u.to_vec()));
    }
    Ok(())
}

/// All primitive vectors of `Z^d` with max-norm at most `radius`, in
/// lexicographic order.
pub fn primitive_vectors(dim: usize, radius: i64) -> Vec<Vec<i64>> {
    let side = (2 * radius + 1) as usize;
    let total = side.pow(dim as u32);
    (0..total)
        .map(|mut k| {
            (0..dim)
                .map(|_| {
                    let x = (k % side) as i64 - radius;
                    k /= side;
                    x
                })
                .collect::<Vec<i64>>()
                .into_iter()
                .rev()
                .collect::<Vec<i64>>()
        })
        .filter(|v| v.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1)
        .collect()
}

impl Fan {
    /// Whether `u` (nonzero) lies in the support; always true for complete fans
    /// but computed rather than assumed.
    pub fn contains(&self, u: &[Rational]) -> bool {
        !u.iter().all(Zero::is_zero) && self.locate(u).is_ok()
    }
}
