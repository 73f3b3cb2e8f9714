//! Named rotation systems used throughout the examples and tests.

use crate::graph::SymmetricDigraph;
use crate::rotation::RotationSystem;

/// Planar embedding of `K4`: four triangular faces.
pub fn k4_sphere() -> RotationSystem {
    let g = SymmetricDigraph::complete(4).expect("K4");
    let orders = vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]];
    RotationSystem::from_neighbor_orders(g, &orders, vec![false; 6]).expect("valid rotation")
}

/// The planar rotation of `K4` with edge `{0, 1}` twisted: faces `[6, 3, 3]`
/// on the projective plane.
pub fn k4_projective_plane() -> RotationSystem {
    let mut rs = k4_sphere();
    rs.set_twist(0, true);
    rs
}

/// The cycle `C_n` embedded in the sphere.
pub fn cycle(n: usize) -> RotationSystem {
    RotationSystem::sorted(SymmetricDigraph::cycle(n).expect("n >= 3")).expect("valid rotation")
}
