//! Comfortability: half the squared norm of the stationary state on the
//! internal graph, its exact average over single-tail inflows, and the
//! `a -> 1` limit.
//!
//! Averages are normalised by the number of arcs `|A|` of the base graph:
//! `E[E] = (1/|A|) sum_t E^(t)` over all `2|A|` tails, i.e. twice the
//! per-tail mean. With this normalisation `E[E] -> 3` as `a -> 0` and
//! `delta^2 E[E]` tends to the limit coefficient as `a = 1 - delta -> 1`.

pub mod kn;
pub mod young;

use crate::cover::BlowUpGraph;
use crate::error::{assumption, Result};
use crate::par::Execution;
use crate::rotation::FacialDecomposition;
use crate::scattering::{scattering_matrix, ScatteringMatrix};
use crate::walk::{unit_inflow, Coin, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comfort {
    pub total: f64,
    pub island: f64,
    pub bridge: f64,
}

fn require(bg: &BlowUpGraph, coin: &Coin) -> Result<f64> {
    if !bg.is_hedgehog() {
        return Err(assumption("hedgehog tails", "every island arc must carry a tail"));
    }
    let d = coin.real_d()?;
    coin.require_contractive()?;
    if coin.b.norm() < 1e-15 || coin.c.norm() < 1e-15 {
        return Err(assumption("b, c nonzero", "degenerate coin"));
    }
    Ok(d)
}

/// `(sigma h)(v) = (-1)^tau(v) h(v ^ 1)`.
pub fn apply_sigma(bg: &BlowUpGraph, h: &[C64]) -> Vec<C64> {
    (0..h.len())
        .map(|v| if bg.bridge_twist(v) { -h[v ^ 1] } else { h[v ^ 1] })
        .collect()
}

/// Comfortability of one inflow from `S` alone:
/// island part `|Q alpha|^2 / |c|^2`, bridge part
/// `|(sigma + d) Q alpha|^2 / (2 |bc|^2)`.
pub fn comfortability(bg: &BlowUpGraph, s: &ScatteringMatrix, coin: &Coin, inflow: &[C64]) -> Result<Comfort> {
    let d = require(bg, coin)?;
    let q = s.apply_q(inflow);
    let sq = apply_sigma(bg, &q);
    let island = q.iter().map(|z| z.norm_sqr()).sum::<f64>() / coin.c.norm_sqr();
    let bridge = sq
        .iter()
        .zip(&q)
        .map(|(x, y)| (x + y * d).norm_sqr())
        .sum::<f64>()
        / (2.0 * (coin.b * coin.c).norm_sqr());
    Ok(Comfort {
        total: island + bridge,
        island,
        bridge,
    })
}

/// Contribution of one face of the base graph to the averaged comfortability
/// (both of its cover faces, already divided by `|A|`).
#[derive(Debug, Clone, PartialEq)]
pub struct FaceTerm {
    pub face: usize,
    pub length: usize,
    pub self_intersections: usize,
    /// Term driven by the face length.
    pub length_term: f64,
    /// Term driven by the self-intersections (zero without them).
    pub self_term: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AverageComfort {
    /// `E[E]`, normalised by `|A|`.
    pub value: f64,
    /// Mean over the `2|A|` tails, `value / 2`.
    pub per_tail_mean: f64,
    /// `E[E]` from traces of `Q Q*` and `Q Q* sigma`.
    pub trace_form: f64,
    /// `E[E]` from the explicit sums over faces.
    pub face_form: f64,
    /// `E[E]` from the real-coin specialisation, when `a > 0` and `omega = 1`.
    pub positive_form: Option<f64>,
    pub faces: Vec<FaceTerm>,
}

/// Exact average of the comfortability over single-tail inflows.
pub fn average_comfortability(bg: &BlowUpGraph, coin: &Coin) -> Result<AverageComfort> {
    let d = require(bg, coin)?;
    let s = scattering_matrix(bg, coin)?;
    let arcs = bg.base().graph().arc_count() as f64;
    let b2 = coin.b.norm_sqr();
    let bc2 = (coin.b * coin.c).norm_sqr();

    let mut tr_qq = 0.0;
    let mut tr_qqs = C64::default();
    for block in &s.blocks {
        let mut q = block.matrix.clone();
        for i in 0..q.nrows() {
            q[(i, i)] -= coin.d;
        }
        let qq = &q * q.adjoint();
        tr_qq += qq.trace().re;
        for (j, &t) in block.tails.iter().enumerate() {
            if let Some(i) = block.tails.iter().position(|&u| u == t ^ 1) {
                let sign = if bg.bridge_twist(t) { -1.0 } else { 1.0 };
                tr_qqs += qq[(i, j)] * sign;
            }
        }
    }
    let trace_form = ((2.0 + b2) / (2.0 * bc2) * tr_qq + d / bc2 * tr_qqs.re) / arcs;

    let z = coin.a * coin.omega();
    let a2 = coin.a.norm_sqr();
    let faces = bg.faces();
    let mut terms: Vec<FaceTerm> = faces
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| FaceTerm {
            face: i,
            length: f.len(),
            self_intersections: f.self_intersections().len(),
            length_term: 0.0,
            self_term: 0.0,
        })
        .collect();
    for cf in bg.cover_faces() {
        let n = cf.len();
        let denom = (C64::from(1.0) - z.powu(n as u32)).norm_sqr();
        let length_term = n as f64 * (1.0 - a2.powi(n as i32)) / denom;
        let mut self_sum = C64::default();
        for (i, &e) in cf.arcs.iter().enumerate() {
            if let Some(j) = cf.arcs.iter().position(|&x| x == e ^ 1) {
                let to_rev = (i + n - j) % n;
                let from_rev = (j + n - i) % n;
                self_sum += z.powu(from_rev as u32) * (1.0 - a2.powi(to_rev as i32))
                    + z.conj().powu(to_rev as u32) * (1.0 - a2.powi(from_rev as i32));
            }
        }
        let t = &mut terms[cf.base_face];
        t.length_term += (2.0 + b2) / (2.0 * b2) * length_term / arcs;
        t.self_term += d / b2 * self_sum.re / denom / arcs;
    }
    let face_form = terms.iter().map(|t| t.length_term + t.self_term).sum();

    let positive_form = positive_coin(coin).then(|| positive_form(faces, coin.a.re, arcs));
    Ok(AverageComfort {
        value: trace_form,
        per_tail_mean: trace_form / 2.0,
        trace_form,
        face_form,
        positive_form,
        faces: terms,
    })
}

fn positive_coin(coin: &Coin) -> bool {
    coin.a.im.abs() < 1e-12 && coin.a.re > 0.0 && (coin.omega() - C64::from(1.0)).norm() < 1e-12
}

/// For real `a > 0` and `omega = 1`:
/// `(1/|A|) [ (2 + |b|^2)/|b|^2 sum_f |f| (1 + a^|f|)/(1 - a^|f|)
///  - 2a/|b|^2 sum_f 1/(1 - a^|f|) sum_{e in f, e^-1 in f} (a^dist(e, e^-1) + a^dist(e^-1, e)) ]`.
fn positive_form(faces: &FacialDecomposition, a: f64, arcs: f64) -> f64 {
    let b2 = 1.0 - a * a;
    let mut first = 0.0;
    let mut second = 0.0;
    for f in &faces.faces {
        let n = f.len() as i32;
        let an = a.powi(n);
        first += n as f64 * (1.0 + an) / (1.0 - an);
        let pairs: f64 = f
            .self_intersections()
            .iter()
            .map(|si| 2.0 * (a.powi(si.forward as i32) + a.powi(si.backward as i32)))
            .sum();
        second += pairs / (1.0 - an);
    }
    ((2.0 + b2) / b2 * first - 2.0 * a / b2 * second) / arcs
}

/// `E[E]` by evaluating every single-tail inflow and normalising by `|A|`.
pub fn average_by_enumeration(bg: &BlowUpGraph, coin: &Coin, exec: Execution) -> Result<f64> {
    let s = scattering_matrix(bg, coin)?;
    let n = bg.vertex_count();
    let values = exec.map_range(n, |t| comfortability(bg, &s, coin, &unit_inflow(n, t)).map(|c| c.total));
    let total: f64 = values.into_iter().collect::<Result<Vec<_>>>()?.into_iter().sum();
    Ok(total / bg.base().graph().arc_count() as f64)
}

/// `lim delta^2 E[E]` as `a = 1 - delta -> 1`:
/// `(|F|/|E|) (1 - (1/|F|) sum_f k_f/|f|)` with `k_f` the number of arcs of
/// `f` whose reverse also lies on `f` (two per self-intersection edge).
pub fn limit_comfortability(faces: &FacialDecomposition, edge_count: usize) -> f64 {
    let nf = faces.faces.len() as f64;
    let ratio: f64 = faces
        .faces
        .iter()
        .map(|f| 2.0 * f.self_intersections().len() as f64 / f.len() as f64)
        .sum();
    (nf / edge_count as f64) * (1.0 - ratio / nf)
}
