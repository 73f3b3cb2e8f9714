#![allow(dead_code)]

use ewalk_core::graph::SymmetricDigraph;
use ewalk_core::rotation::RotationSystem;
use ewalk_core::walk::{Coin, C64};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected simple graph on 3..=max_vertices vertices with minimum degree 2.
pub fn random_graph(rng: &mut impl Rng, max_vertices: usize) -> SymmetricDigraph {
    loop {
        let n = rng.gen_range(3..=max_vertices);
        let p = rng.gen_range(0.4..0.9);
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = SymmetricDigraph::from_edges(n, &edges).unwrap();
        if g.is_connected() && (0..n).all(|x| g.degree(x) >= 2) {
            return g;
        }
    }
}

pub fn random_system_on(rng: &mut impl Rng, g: SymmetricDigraph) -> RotationSystem {
    let orders: Vec<_> = (0..g.vertex_count())
        .map(|x| {
            let mut nb = g.neighbors(x);
            nb.shuffle(rng);
            nb
        })
        .collect();
    let twist = (0..g.edge_count()).map(|_| rng.gen_bool(0.5)).collect();
    RotationSystem::from_neighbor_orders(g, &orders, twist).unwrap()
}

pub fn random_system(rng: &mut impl Rng, max_vertices: usize) -> RotationSystem {
    let g = random_graph(rng, max_vertices);
    random_system_on(rng, g)
}

/// Unitary coin with real `d` and `|a| < 1` bounded away from 1.
pub fn random_coin(rng: &mut impl Rng) -> Coin {
    let theta = rng.gen_range(0.3..2.8);
    let psi = rng.gen_range(0.0..std::f64::consts::TAU);
    let chi = rng.gen_range(0.0..std::f64::consts::TAU);
    Coin::with_real_d(theta, psi, chi)
}

pub fn random_inflow(rng: &mut impl Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

pub fn max_gap(x: &[C64], y: &[C64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}
