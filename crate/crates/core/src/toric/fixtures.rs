//! Small Fano fans used by tests, benchmarks and the self-test.

use super::{Fan, ToricFano};

const P2: &str = include_str!("../../fixtures/p2.json");
const P3: &str = include_str!("../../fixtures/p3.json");
const P1XP1: &str = include_str!("../../fixtures/p1xp1.json");
const P1XP1_BLOWUP: &str = include_str!("../../fixtures/p1xp1_blowup.json");
const P112: &str = include_str!("../../fixtures/p112.json");

fn load(s: &str) -> ToricFano {
    ToricFano::from_json(s).expect("fixture is a valid Fano fan")
}

pub fn projective_plane() -> ToricFano {
    load(P2)
}

pub fn projective_three_space() -> ToricFano {
    load(P3)
}

/// Rays ordered `e1, −e1, e2, −e2`.
pub fn product_of_lines() -> ToricFano {
    load(P1XP1)
}

/// `P¹×P¹` blown up at the fixed point of the cone over `(1,1)`.
pub fn blown_up_product_of_lines() -> ToricFano {
    load(P1XP1_BLOWUP)
}

/// Weighted plane `P(1,1,2)`, with an `A_1` point.
pub fn weighted_plane_112() -> ToricFano {
    load(P112)
}

/// `P^n`: rays `e_1, …, e_n, −Σe_i`, cones omitting one ray each.
pub fn projective_space(n: usize) -> ToricFano {
    assert!(n >= 1);
    let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    rays.push(vec![-1; n]);
    let cones = (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
    ToricFano::new(Fan::new(n, rays, cones).expect("P^n fan")).expect("P^n is Fano")
}

pub fn all() -> Vec<ToricFano> {
    vec![
        projective_plane(),
        projective_three_space(),
        product_of_lines(),
        blown_up_product_of_lines(),
        weighted_plane_112(),
    ]
}
