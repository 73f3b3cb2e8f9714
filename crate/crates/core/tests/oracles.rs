//! Closed forms checked against the time-stepping simulator.

mod common;

use common::*;
use ewalk_core::catalog;
use ewalk_core::comfort::{average_by_enumeration, average_comfortability, comfortability};
use ewalk_core::cover::BlowUpGraph;
use ewalk_core::enumerate::{enumerate_embeddings, DEFAULT_BUDGET};
use ewalk_core::graph::SymmetricDigraph;
use ewalk_core::par::Execution;
use ewalk_core::scattering::{scattering_matrix, stationary_closed_form};
use ewalk_core::walk::{run_to_stationary, unit_inflow, Coin, WaveState, C64};

fn k4_representatives() -> Vec<ewalk_core::rotation::RotationSystem> {
    let k4 = SymmetricDigraph::complete(4).unwrap();
    enumerate_embeddings(&k4, DEFAULT_BUDGET, Execution::Parallel)
        .unwrap()
        .into_iter()
        .map(|c| c.representative)
        .collect()
}

fn state_gap(x: &WaveState, y: &WaveState) -> f64 {
    max_gap(&x.minus, &y.minus)
        .max(max_gap(&x.plus, &y.plus))
        .max(max_gap(&x.bridge, &y.bridge))
        .max(max_gap(&x.outflow, &y.outflow))
}

#[test]
fn random_coins_match_simulator() {
    let mut r = rng(11);
    for rs in k4_representatives().iter().step_by(2) {
        let bg = BlowUpGraph::hedgehog(rs).unwrap();
        for _ in 0..3 {
            let coin = random_coin(&mut r);
            let inflow = random_inflow(&mut r, bg.vertex_count());
            let st = run_to_stationary(&bg, &coin, inflow.clone(), 1e-12, 1_000_000).unwrap();
            let closed = stationary_closed_form(&bg, &coin, &inflow).unwrap();
            assert!(state_gap(&st.state, &closed) < 1e-8, "gap {}", state_gap(&st.state, &closed));
            let s = scattering_matrix(&bg, &coin).unwrap();
            let c = comfortability(&bg, &s, &coin, &inflow).unwrap();
            assert!((c.total - st.state.internal_norm_sqr() / 2.0).abs() < 1e-8);
            assert!((c.island - st.state.island_norm_sqr() / 2.0).abs() < 1e-8);
            assert!((c.bridge - st.state.bridge_norm_sqr() / 2.0).abs() < 1e-8);
        }
    }
}

#[test]
fn key_relation_along_faces() {
    // Along a face, the quay entering the next tail equals the quay leaving
    // the previous one times omega and the sign of the bridge in between.
    let rs = catalog::k4_projective_plane();
    let bg = BlowUpGraph::hedgehog(&rs).unwrap();
    let coin = Coin::hadamard();
    let omega = coin.omega();
    for tail in [0, 7, 13] {
        let st = run_to_stationary(&bg, &coin, unit_inflow(24, tail), 1e-13, 1_000_000).unwrap().state;
        for f in bg.cover_faces() {
            for j in 0..f.len() {
                let (prev, next) = (f.arcs[j], f.arcs[(j + 1) % f.len()]);
                let sign = if f.twists[(j + 1) % f.len()] { -1.0 } else { 1.0 };
                let predicted = st.plus[prev] * omega * sign;
                assert!((st.minus[next] - predicted).norm() < 1e-8);
            }
        }
    }
}

#[test]
fn partial_boundary_matches_simulator() {
    let mut r = rng(5);
    for _ in 0..6 {
        let rs = random_system(&mut r, 5);
        let base = BlowUpGraph::from_system(&rs).unwrap();
        let n = base.vertex_count();
        let mut boundary: Vec<bool> = (0..n).map(|_| rand::Rng::gen_bool(&mut r, 0.5)).collect();
        boundary[0] = true;
        let bg = base.with_boundary(boundary.clone());
        let coin = random_coin(&mut r);
        let s = scattering_matrix(&bg, &coin).unwrap();
        assert!(s.unitarity_defect() < 1e-10);
        let mut inflow = random_inflow(&mut r, n);
        for (z, &b) in inflow.iter_mut().zip(&boundary) {
            if !b {
                *z = C64::default();
            }
        }
        let st = run_to_stationary(&bg, &coin, inflow.clone(), 1e-12, 1_000_000).unwrap();
        assert!(max_gap(&st.state.outflow, &s.apply(&inflow)) < 1e-8);
    }
}

#[test]
fn averages_agree_on_random_graphs() {
    let mut r = rng(99);
    for _ in 0..10 {
        let rs = random_system(&mut r, 6);
        let bg = BlowUpGraph::hedgehog(&rs).unwrap();
        let coin = random_coin(&mut r);
        let avg = average_comfortability(&bg, &coin).unwrap();
        let brute = average_by_enumeration(&bg, &coin, Execution::Parallel).unwrap();
        assert!((avg.trace_form - brute).abs() < 1e-9 * brute);
        assert!((avg.face_form - brute).abs() < 1e-9 * brute);
        let real = Coin::real(0.55).unwrap();
        let avg = average_comfortability(&bg, &real).unwrap();
        assert!((avg.positive_form.unwrap() - avg.trace_form).abs() < 1e-10 * avg.trace_form);
    }
}

#[test]
fn comfortability_constant_on_orbits() {
    use ewalk_core::enumerate::SystemSpace;
    let space = SystemSpace::new(SymmetricDigraph::complete(4).unwrap(), DEFAULT_BUDGET).unwrap();
    let coin = Coin::real(0.6).unwrap();
    for (rep, _) in space.orbits() {
        let orbit = space.orbit(rep);
        let value = |i: u64| {
            let bg = BlowUpGraph::hedgehog(&space.system(i)).unwrap();
            average_comfortability(&bg, &coin).unwrap().value
        };
        let v0 = value(rep);
        for &i in orbit.iter().step_by(7) {
            assert!((value(i) - v0).abs() < 1e-9 * v0);
        }
    }
}
