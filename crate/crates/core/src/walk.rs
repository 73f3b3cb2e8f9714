//! Time evolution of the coined walk on the blow-up graph with tails.
//!
//! Tails are boundary conditions: each step the pier into the tail's
//! boundary vertex carries the constant inflow, and whatever the boundary
//! vertex sends down the tail is recorded as outflow and leaves the system.

use nalgebra::{Complex, Matrix2};

use crate::cover::{BlowUpGraph, DoubleCover};
use crate::error::{assumption, Error, Result};
use crate::graph::Vertex;
use crate::rotation::{Flag, RotationSystem};
use crate::scattering::scattering_matrix;

pub type C64 = Complex<f64>;

pub const UNITARY_TOL: f64 = 1e-12;

/// The local coin `[[a, b], [c, d]]`: `a` keeps amplitude on the island,
/// `b` moves bridge to island, `c` island to bridge, `d` reflects on the bridge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coin {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Coin {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let coin = Self { a, b, c, d };
        let defect = coin.unitarity_defect();
        if !(defect < UNITARY_TOL) {
            return Err(assumption("unitary coin", format!("max |C*C - I| = {defect:e}")));
        }
        Ok(coin)
    }

    /// `a = b = c = 1/sqrt 2`, `d = -1/sqrt 2`.
    pub fn hadamard() -> Self {
        Self::real(std::f64::consts::FRAC_1_SQRT_2).expect("valid")
    }

    /// The real coin `[[a, r], [r, -a]]` with `r = sqrt(1 - a^2)`; `omega = 1`.
    pub fn real(a: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a.abs()) {
            return Err(Error::Domain(format!("|a| must be at most 1, got {a}")));
        }
        let r = (1.0 - a * a).sqrt();
        Self::new(C64::from(a), C64::from(r), C64::from(r), C64::from(-a))
    }

    /// A unitary coin with real `d = cos(theta)`, parametrised by three angles.
    pub fn with_real_d(theta: f64, psi: f64, chi: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let e = |x: f64| C64::from_polar(1.0, x);
        Self {
            a: e(2.0 * psi) * c,
            b: e(psi + chi) * s,
            c: -e(psi - chi) * s,
            d: C64::from(c),
        }
    }

    pub fn matrix(&self) -> Matrix2<C64> {
        Matrix2::new(self.a, self.b, self.c, self.d)
    }

    pub fn unitarity_defect(&self) -> f64 {
        let m = self.matrix();
        let p = m.adjoint() * m - Matrix2::identity();
        p.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `omega = -det C`.
    pub fn omega(&self) -> C64 {
        -(self.a * self.d - self.b * self.c)
    }

    /// The value of `d`, which the closed forms require to be real.
    pub fn real_d(&self) -> Result<f64> {
        if self.d.im.abs() > UNITARY_TOL {
            return Err(assumption(
                "d real (coin entry (2,2))",
                format!("d = {}{:+}i is not real", self.d.re, self.d.im),
            ));
        }
        Ok(self.d.re)
    }

    pub(crate) fn require_contractive(&self) -> Result<()> {
        if self.a.norm() >= 1.0 - 1e-15 {
            return Err(assumption("|a| < 1", format!("|a| = {}", self.a.norm())));
        }
        Ok(())
    }
}

/// Amplitudes on the internal arcs, indexed by blow-up vertex `v`:
/// `minus[v]` on the quay half of `I(v)` before the tail (the whole arc when
/// `I(v)` carries no tail), `plus[v]` on the half after it, `bridge[v]` on
/// `B(v)`. `inflow` and `outflow` are per tail, indexed by the island arc.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveState {
    pub minus: Vec<C64>,
    pub plus: Vec<C64>,
    pub bridge: Vec<C64>,
    pub inflow: Vec<C64>,
    pub outflow: Vec<C64>,
}

impl WaveState {
    pub fn zero(n: usize) -> Self {
        let z = vec![C64::default(); n];
        Self {
            minus: z.clone(),
            plus: z.clone(),
            bridge: z.clone(),
            inflow: z.clone(),
            outflow: z,
        }
    }

    /// Zero internal state with the given constant inflow.
    pub fn with_inflow(inflow: Vec<C64>) -> Self {
        let mut s = Self::zero(inflow.len());
        s.inflow = inflow;
        s
    }

    pub fn island_norm_sqr(&self) -> f64 {
        self.minus.iter().chain(&self.plus).map(|z| z.norm_sqr()).sum()
    }

    pub fn bridge_norm_sqr(&self) -> f64 {
        self.bridge.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn internal_norm_sqr(&self) -> f64 {
        self.island_norm_sqr() + self.bridge_norm_sqr()
    }

    /// Largest change on any internal arc between two states.
    pub fn sup_distance(&self, other: &WaveState) -> f64 {
        let pairs = self
            .minus
            .iter()
            .zip(&other.minus)
            .chain(self.plus.iter().zip(&other.plus))
            .chain(self.bridge.iter().zip(&other.bridge));
        pairs.map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }
}

/// Unit inflow on a single tail.
pub fn unit_inflow(n: usize, tail: usize) -> Vec<C64> {
    let mut v = vec![C64::default(); n];
    v[tail] = C64::from(1.0);
    v
}

/// One step of the walk.
pub fn step(state: &WaveState, bg: &BlowUpGraph, coin: &Coin) -> WaveState {
    let n = bg.vertex_count();
    let mut next = WaveState::zero(n);
    next.inflow.clone_from(&state.inflow);
    for v in 0..n {
        let prev = bg.rho_inv(v);
        let from_island = if bg.is_boundary(prev) { state.plus[prev] } else { state.minus[prev] };
        let from_bridge = state.bridge[v ^ 1];
        next.minus[v] = coin.a * from_island + coin.b * from_bridge;
        let out = coin.c * from_island + coin.d * from_bridge;
        next.bridge[v] = if bg.bridge_twist(v) { -out } else { out };
        if bg.is_boundary(v) {
            next.plus[v] = coin.a * state.minus[v] + coin.b * state.inflow[v];
            next.outflow[v] = coin.c * state.minus[v] + coin.d * state.inflow[v];
        }
    }
    next
}

#[derive(Debug, Clone)]
pub struct Stationary {
    pub state: WaveState,
    pub steps: usize,
    pub residual: f64,
}

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_STEPS: usize = 1_000_000;

/// Iterates from the zero internal state until the sup-norm change over one
/// step drops below `tol`.
pub fn run_to_stationary(
    bg: &BlowUpGraph,
    coin: &Coin,
    inflow: Vec<C64>,
    tol: f64,
    max_steps: usize,
) -> Result<Stationary> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if inflow.len() != bg.vertex_count() {
        return Err(Error::Domain(format!(
            "inflow has {} entries, expected {}",
            inflow.len(),
            bg.vertex_count()
        )));
    }
    let mut state = WaveState::with_inflow(inflow);
    let mut residual = f64::INFINITY;
    for steps in 1..=max_steps {
        let next = step(&state, bg, coin);
        residual = next.sup_distance(&state);
        state = next;
        if residual < tol {
            return Ok(Stationary { state, steps, residual });
        }
    }
    Err(Error::NonConvergence {
        steps: max_steps,
        residual,
    })
}

/// Tail correspondence induced by flipping vertex `x`: tail `(e, p)` of `rs`
/// goes to tail `(e, p + [t(e) = x])` of `rs.flip_vertex(x)`.
pub fn flip_tail_map(rs: &RotationSystem, x: Vertex) -> Result<Vec<usize>> {
    let flipped = rs.flip_vertex(x);
    let before = DoubleCover::new(rs)?;
    let after = DoubleCover::new(&flipped)?;
    Ok((0..before.graph().arc_count())
        .map(|a| {
            let s = before.project(a);
            let hop = u8::from(rs.graph().terminus(s.arc) == x);
            after.lift(Flag::new(s.arc, s.sheet ^ hop))
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    /// Tail of the flipped system corresponding to the input tail.
    pub mapped_tail: usize,
    pub comfort_before: f64,
    pub comfort_after: f64,
    /// Largest `||S_1(i, j)| - |S_2(m(i), m(j))||` under the tail map `m`.
    pub modulus_gap: f64,
}

/// Runs `rs` and `rs.flip_vertex(x)` to stationarity with unit inflow on
/// `tail` (and its image) and compares comfortabilities and `|S|`.
pub fn check_unitary_equivalence(
    rs: &RotationSystem,
    x: Vertex,
    coin: &Coin,
    tail: usize,
    tol: f64,
    max_steps: usize,
) -> Result<EquivalenceReport> {
    let map = flip_tail_map(rs, x)?;
    let flipped = rs.flip_vertex(x);
    let bg1 = BlowUpGraph::hedgehog(rs)?;
    let bg2 = BlowUpGraph::hedgehog(&flipped)?;
    let n = bg1.vertex_count();
    if tail >= n {
        return Err(Error::Domain(format!("tail {tail} out of range 0..{n}")));
    }
    let run1 = run_to_stationary(&bg1, coin, unit_inflow(n, tail), tol, max_steps)?;
    let run2 = run_to_stationary(&bg2, coin, unit_inflow(n, map[tail]), tol, max_steps)?;
    let s1 = scattering_matrix(&bg1, coin)?.dense();
    let s2 = scattering_matrix(&bg2, coin)?.dense();
    let mut modulus_gap = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            modulus_gap = modulus_gap.max((s1[(i, j)].norm() - s2[(map[i], map[j])].norm()).abs());
        }
    }
    Ok(EquivalenceReport {
        mapped_tail: map[tail],
        comfort_before: run1.state.internal_norm_sqr() / 2.0,
        comfort_after: run2.state.internal_norm_sqr() / 2.0,
        modulus_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn outflow_energy(s: &WaveState) -> f64 {
        s.outflow.iter().map(|z| z.norm_sqr()).sum()
    }

    #[test]
    fn coin_validation() {
        assert!(Coin::new(C64::from(1.0), C64::from(1.0), C64::from(0.0), C64::from(1.0)).is_err());
        let h = Coin::hadamard();
        assert!((h.omega() - C64::from(1.0)).norm() < 1e-15);
        let g = Coin::with_real_d(0.7, 0.3, -1.1);
        assert!(g.unitarity_defect() < 1e-14);
        assert!(g.real_d().is_ok());
        let complex_d = Coin { d: C64::new(0.0, 1.0), ..Coin::new(C64::from(0.0), C64::from(1.0), C64::from(1.0), C64::from(0.0)).unwrap() };
        assert!(complex_d.real_d().is_err());
    }

    #[test]
    fn norm_balance_each_step() {
        let bg = BlowUpGraph::hedgehog(&catalog::k4_projective_plane()).unwrap();
        let coin = Coin::with_real_d(1.1, 0.4, 0.9);
        let inflow: Vec<_> = (0..24).map(|i| C64::new((i as f64).sin(), (i as f64 * 0.3).cos())).collect();
        let absorbed: f64 = inflow.iter().map(|z| z.norm_sqr()).sum();
        let mut s = WaveState::with_inflow(inflow);
        for _ in 0..50 {
            let next = step(&s, &bg, &coin);
            let lhs = next.internal_norm_sqr() + outflow_energy(&next);
            let rhs = s.internal_norm_sqr() + absorbed;
            assert!((lhs - rhs).abs() < 1e-12 * rhs.max(1.0));
            s = next;
        }
    }

    #[test]
    fn zero_inflow_stays_zero() {
        let bg = BlowUpGraph::hedgehog(&catalog::k4_sphere()).unwrap();
        let s = step(&WaveState::zero(24), &bg, &Coin::hadamard());
        assert_eq!(s, WaveState::zero(24));
    }

    #[test]
    fn reflecting_coin_swaps_bridges() {
        let bg = BlowUpGraph::hedgehog(&catalog::k4_sphere()).unwrap();
        let one = C64::from(1.0);
        let zero = C64::default();
        let coin = Coin::new(one, zero, zero, -one).unwrap();
        let mut s = WaveState::zero(24);
        for v in 0..24 {
            s.bridge[v] = C64::from(v as f64);
        }
        let next = step(&s, &bg, &coin);
        for v in 0..24 {
            assert_eq!(next.bridge[v], -s.bridge[v ^ 1]);
        }
        let st = run_to_stationary(&bg, &coin, unit_inflow(24, 5), 1e-12, 100).unwrap();
        assert!(st.steps <= 2 * 24);
        assert_eq!(st.state.outflow[5], -one);
    }

    #[test]
    fn non_convergence_reports_residual() {
        let bg = BlowUpGraph::hedgehog(&catalog::k4_sphere()).unwrap();
        match run_to_stationary(&bg, &Coin::hadamard(), unit_inflow(24, 0), 1e-10, 1) {
            Err(Error::NonConvergence { steps: 1, residual }) => assert!(residual > 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }
}
