//! Closed-form scattering matrix, stationary state, and orientability read
//! off from the signs of the scattering entries.
//!
//! Tails are indexed by the island arc carrying them (a cover arc). Along a
//! cover face `f_0, ..., f_{n-1}` the weighted shift `P` sends the tail at
//! one boundary position to the next, picking up `omega` per bridge crossed
//! and `-1` per type-1 edge; the face block is `bc P (I - aP)^-1 + dI`.

use nalgebra::DMatrix;

use crate::cover::{BlowUpGraph, CoverFace};
use crate::error::{assumption, Error, Result};
use crate::walk::{Coin, WaveState, C64};

const SINGULAR_TOL: f64 = 1e-12;
const NONZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FaceBlock {
    /// Index into `BlowUpGraph::cover_faces`.
    pub face: usize,
    /// Tails on this face, in facial-walk order.
    pub tails: Vec<usize>,
    /// Positions of those tails along the face.
    pub positions: Vec<usize>,
    pub matrix: DMatrix<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringMatrix {
    pub blocks: Vec<FaceBlock>,
    dim: usize,
    d: C64,
}

impl ScatteringMatrix {
    /// Number of tails.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn d(&self) -> C64 {
        self.d
    }

    /// The full matrix indexed by tail id (island arc id); rows and columns of
    /// island arcs without a tail are zero.
    pub fn dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for b in &self.blocks {
            for (i, &r) in b.tails.iter().enumerate() {
                for (j, &c) in b.tails.iter().enumerate() {
                    m[(r, c)] = b.matrix[(i, j)];
                }
            }
        }
        m
    }

    /// `Q = S - dI` as a dense matrix.
    pub fn q_dense(&self) -> DMatrix<C64> {
        let mut m = self.dense();
        for b in &self.blocks {
            for &t in &b.tails {
                m[(t, t)] -= self.d;
            }
        }
        m
    }

    pub fn apply(&self, inflow: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::default(); self.dim];
        for b in &self.blocks {
            for (i, &r) in b.tails.iter().enumerate() {
                out[r] = b.tails.iter().enumerate().map(|(j, &c)| b.matrix[(i, j)] * inflow[c]).sum();
            }
        }
        out
    }

    /// `Q alpha = (S - dI) alpha`.
    pub fn apply_q(&self, inflow: &[C64]) -> Vec<C64> {
        let mut out = self.apply(inflow);
        for b in &self.blocks {
            for &t in &b.tails {
                out[t] -= self.d * inflow[t];
            }
        }
        out
    }

    /// Largest entry of `S_f* S_f - I` over all blocks.
    pub fn unitarity_defect(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| {
                let n = b.matrix.nrows();
                let p = b.matrix.adjoint() * &b.matrix - DMatrix::identity(n, n);
                p.iter().map(|z| z.norm()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }
}

/// Boundary positions on a face and the weight picked up moving from each
/// boundary position to the next one: `(positions, weights)` with
/// `weights[l]` the factor carrying position `l - 1` to position `l`.
fn boundary_steps(face: &CoverFace, boundary: &[bool], omega: C64) -> (Vec<usize>, Vec<C64>) {
    let n = face.len();
    let positions: Vec<usize> = (0..n).filter(|&j| boundary[face.arcs[j]]).collect();
    let q = positions.len();
    let weights = (0..q)
        .map(|l| {
            let from = positions[(l + q - 1) % q];
            let to = positions[l];
            let dist = if q == 1 { n } else { (to + n - from) % n };
            let flips = (1..=dist).filter(|&s| face.twists[(from + s) % n]).count();
            let sign = if flips % 2 == 1 { -1.0 } else { 1.0 };
            omega.powu(dist as u32) * sign
        })
        .collect();
    (positions, weights)
}

/// The weighted cyclic shift `P_f(omega)` on the boundary positions of `face`.
pub fn face_permutation(face: &CoverFace, boundary: &[bool], omega: C64) -> DMatrix<C64> {
    let (positions, weights) = boundary_steps(face, boundary, omega);
    let q = positions.len();
    let mut p = DMatrix::zeros(q, q);
    for l in 0..q {
        p[(l, (l + q - 1) % q)] = weights[l];
    }
    p
}

fn check_coin(coin: &Coin) -> Result<()> {
    coin.real_d()?;
    Ok(())
}

fn degenerate(coin: &Coin) -> bool {
    (coin.b * coin.c).norm() < 1e-15
}

fn singular_check(fi: usize, a: C64, p: &DMatrix<C64>) -> Result<()> {
    let q = p.nrows();
    if q == 0 {
        return Ok(());
    }
    let mut cycle = C64::from(1.0);
    for l in 0..q {
        cycle *= p[(l, (l + q - 1) % q)];
    }
    let magnitude = (C64::from(1.0) - a.powu(q as u32) * cycle).norm();
    if magnitude < SINGULAR_TOL {
        return Err(Error::SingularBlock { face: fi, magnitude });
    }
    Ok(())
}

/// Block `bc P (I - aP)^-1 + dI` by matrix inversion.
fn block_by_inverse(fi: usize, p: &DMatrix<C64>, coin: &Coin) -> Result<DMatrix<C64>> {
    let q = p.nrows();
    let id = DMatrix::<C64>::identity(q, q);
    if degenerate(coin) {
        return Ok(id * coin.d);
    }
    singular_check(fi, coin.a, p)?;
    let inv = (&id - p * coin.a)
        .try_inverse()
        .ok_or(Error::SingularBlock { face: fi, magnitude: 0.0 })?;
    Ok(p * inv * (coin.b * coin.c) + id * coin.d)
}

/// The same block from the finite geometric series
/// `bc / (1 - a^q w) * sum_{k<q} (aP)^k P + dI`, with `w` the cycle weight.
pub fn block_by_series(face: &CoverFace, boundary: &[bool], coin: &Coin) -> DMatrix<C64> {
    let p = face_permutation(face, boundary, coin.omega());
    let q = p.nrows();
    let id = DMatrix::<C64>::identity(q, q);
    let mut cycle = C64::from(1.0);
    for l in 0..q {
        cycle *= p[(l, (l + q - 1) % q)];
    }
    let scale = coin.b * coin.c / (C64::from(1.0) - coin.a.powu(q as u32) * cycle);
    let mut term = p.clone();
    let mut sum = DMatrix::zeros(q, q);
    for _ in 0..q {
        sum += &term;
        term = &p * term * coin.a;
    }
    sum * scale + id * coin.d
}

/// The same block entry by entry:
/// `S(l, m) = bc a^(r-1) W(m -> l) / (1 - a^q w) + d [l = m]`, where `r` is
/// the number of boundary steps from `m` to `l` and `W` the accumulated weight.
pub fn block_by_entries(face: &CoverFace, boundary: &[bool], coin: &Coin) -> DMatrix<C64> {
    let (_, weights) = boundary_steps(face, boundary, coin.omega());
    let q = weights.len();
    let cycle: C64 = weights.iter().product();
    let denom = C64::from(1.0) - coin.a.powu(q as u32) * cycle;
    let mut s = DMatrix::zeros(q, q);
    for m in 0..q {
        let mut w = C64::from(1.0);
        for r in 1..=q {
            let l = (m + r) % q;
            w *= weights[l];
            s[(l, m)] = coin.b * coin.c * coin.a.powu(r as u32 - 1) * w / denom;
        }
        s[(m, m)] += coin.d;
    }
    s
}

/// Block-diagonal scattering matrix over the faces of the cover.
pub fn scattering_matrix(bg: &BlowUpGraph, coin: &Coin) -> Result<ScatteringMatrix> {
    check_coin(coin)?;
    let omega = coin.omega();
    let mut blocks = Vec::with_capacity(bg.cover_faces().len());
    for (fi, face) in bg.cover_faces().iter().enumerate() {
        let p = face_permutation(face, bg.boundary(), omega);
        let matrix = block_by_inverse(fi, &p, coin)?;
        let positions: Vec<usize> = (0..face.len()).filter(|&j| bg.is_boundary(face.arcs[j])).collect();
        let tails = positions.iter().map(|&j| face.arcs[j]).collect();
        blocks.push(FaceBlock {
            face: fi,
            tails,
            positions,
            matrix,
        });
    }
    Ok(ScatteringMatrix {
        blocks,
        dim: bg.vertex_count(),
        d: coin.d,
    })
}

fn require_hedgehog(bg: &BlowUpGraph) -> Result<()> {
    if !bg.is_hedgehog() {
        return Err(assumption("hedgehog tails", "every island arc must carry a tail"));
    }
    Ok(())
}

/// Stationary internal state computed from `S` alone. With
/// `eta = Q alpha / (bc omega)`:
/// `minus[v] = omega b eta(v)`, `plus[v] = (-1)^tau b eta(v')` where `v'` is
/// the next position on the face of `v`, and
/// `bridge[v] = omega (eta(v ^ 1) + (-1)^tau d eta(v))`.
pub fn stationary_closed_form(bg: &BlowUpGraph, coin: &Coin, inflow: &[C64]) -> Result<WaveState> {
    require_hedgehog(bg)?;
    let d = coin.real_d()?;
    if coin.b.norm() < 1e-15 || coin.c.norm() < 1e-15 {
        return Err(assumption("b, c nonzero", "degenerate coin; use the simulator"));
    }
    let s = scattering_matrix(bg, coin)?;
    let omega = coin.omega();
    let scale = C64::from(1.0) / (coin.b * coin.c * omega);
    let eta: Vec<C64> = s.apply_q(inflow).into_iter().map(|z| z * scale).collect();
    let n = bg.vertex_count();
    let mut state = WaveState::with_inflow(inflow.to_vec());
    for v in 0..n {
        let sign = if bg.bridge_twist(v) { -1.0 } else { 1.0 };
        let next = bg.rho(v) ^ 1;
        let next_sign = if bg.bridge_twist(next) { -1.0 } else { 1.0 };
        state.minus[v] = omega * coin.b * eta[v];
        state.plus[v] = coin.b * eta[next] * next_sign;
        state.bridge[v] = omega * (eta[v ^ 1] + eta[v] * (sign * d));
    }
    state.outflow = s.apply(inflow);
    Ok(state)
}

/// Sign of each off-diagonal entry of `S` relative to the positive reference
/// `bc a^(m-1) omega^m / (1 - (a omega)^n)`, together with the islands of the
/// row and column tails. Requires real `a > 0` and real `d`.
fn normalized_signs(s: &ScatteringMatrix, bg: &BlowUpGraph, coin: &Coin) -> Result<Vec<(usize, usize, i8)>> {
    require_hedgehog(bg)?;
    coin.real_d()?;
    if !(coin.a.re > 0.0) || coin.a.im.abs() > 1e-12 {
        return Err(assumption("a > 0 real", format!("a = {}{:+}i", coin.a.re, coin.a.im)));
    }
    let a = coin.a.re;
    let omega = coin.omega();
    let mut out = Vec::new();
    for b in &s.blocks {
        let n = bg.cover_faces()[b.face].len();
        let denom = C64::from(1.0) - (coin.a * omega).powu(n as u32);
        for (i, &r) in b.tails.iter().enumerate() {
            for (j, &c) in b.tails.iter().enumerate() {
                let z = b.matrix[(i, j)];
                if i == j || z.norm() <= NONZERO_TOL {
                    continue;
                }
                let m = (b.positions[i] + n - b.positions[j]) % n;
                let reference = coin.b * coin.c * a.powi(m as i32 - 1) * omega.powu(m as u32) / denom;
                let sign = if (z / reference).re >= 0.0 { 1 } else { -1 };
                out.push((bg.island_of(r), bg.island_of(c), sign));
            }
        }
    }
    Ok(out)
}

/// Orientability from the scattering signs: couple the base vertices under the
/// islands of every nonzero entry with its sign, and test whether the
/// resulting signed graph admits a consistent two-colouring.
pub fn orientability_from_scattering(s: &ScatteringMatrix, bg: &BlowUpGraph, coin: &Coin) -> Result<bool> {
    let signs = normalized_signs(s, bg, coin)?;
    let nv = bg.base().graph().vertex_count();
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); nv];
    for (x, y, sign) in signs {
        let (bx, by) = (x >> 1, y >> 1);
        adj[bx].push((by, sign));
        adj[by].push((bx, sign));
    }
    let mut colour: Vec<Option<i8>> = vec![None; nv];
    for root in 0..nv {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(1);
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            let cx = colour[x].expect("coloured");
            for &(y, sign) in &adj[x] {
                match colour[y] {
                    None => {
                        colour[y] = Some(cx * sign);
                        stack.push(y);
                    }
                    Some(cy) if cy != cx * sign => return Ok(false),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(true)
}

/// Sign uniformity of each submatrix between two distinct islands of the
/// cover. Every such submatrix is sign-uniform for every embedding, because
/// the twist parity along a path in the cover equals the sheet difference of
/// its ends; this is why [`orientability_from_scattering`] compares islands
/// over the same base vertex instead.
pub fn island_pair_signatures_uniform(s: &ScatteringMatrix, bg: &BlowUpGraph, coin: &Coin) -> Result<bool> {
    let mut seen = std::collections::HashMap::new();
    for (x, y, sign) in normalized_signs(s, bg, coin)? {
        if x == y {
            continue;
        }
        if *seen.entry((x, y)).or_insert(sign) != sign {
            return Ok(false);
        }
    }
    Ok(true)
}
