//! Exhaustive enumeration of rotation systems of a small graph, reduced
//! modulo vertex flips, the global mirror and graph automorphisms.
//!
//! Every raw system gets a mixed-radix index: one Lehmer rank per vertex for
//! its cyclic order (first entry pinned to the smallest neighbor), then the
//! twist bits. Orbits are swept in increasing index order with a visited
//! bitmap, so each class is represented by the smallest index in its orbit.

use std::collections::{HashSet, VecDeque};

use crate::comfort::{average_comfortability, limit_comfortability};
use crate::cover::BlowUpGraph;
use crate::error::{Error, Result};
use crate::graph::{SymmetricDigraph, Vertex};
use crate::par::Execution;
use crate::rotation::{RotationSystem, Surface};
use crate::walk::Coin;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// `prod_x (deg(x) - 1)! * 2^|E|`, saturating.
pub fn raw_system_count(g: &SymmetricDigraph) -> u128 {
    let mut total: u128 = 1;
    for x in 0..g.vertex_count() {
        for k in 2..g.degree(x) as u128 {
            total = total.saturating_mul(k);
        }
    }
    for _ in 0..g.edge_count() {
        total = total.saturating_mul(2);
    }
    total
}

fn factorial(n: usize) -> u64 {
    (2..=n as u64).product()
}

fn lehmer_rank(perm: &[usize]) -> u64 {
    let m = perm.len();
    let mut rank = 0;
    for i in 0..m {
        let smaller = perm[i + 1..].iter().filter(|&&p| p < perm[i]).count() as u64;
        rank = rank * (m - i) as u64 + smaller;
    }
    rank
}

fn lehmer_unrank(mut rank: u64, m: usize) -> Vec<usize> {
    let mut digits = vec![0; m];
    for i in (0..m).rev() {
        let base = (m - i) as u64;
        digits[i] = (rank % base) as usize;
        rank /= base;
    }
    let mut pool: Vec<usize> = (0..m).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

type Permutation = Vec<Vertex>;

/// All automorphisms of `g`, by backtracking over vertex images.
pub fn automorphisms(g: &SymmetricDigraph) -> Vec<Permutation> {
    let n = g.vertex_count();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|x| {
            let mut row = vec![false; n];
            for y in g.neighbors(x) {
                row[y] = true;
            }
            row
        })
        .collect();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        x: usize,
        g: &SymmetricDigraph,
        adj: &[Vec<bool>],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Permutation>,
    ) {
        let n = adj.len();
        if x == n {
            out.push(image.clone());
            return;
        }
        for y in 0..n {
            if used[y] || g.degree(y) != g.degree(x) {
                continue;
            }
            if (0..x).any(|w| adj[w][x] != adj[image[w]][y]) {
                continue;
            }
            image[x] = y;
            used[y] = true;
            rec(x + 1, g, adj, image, used, out);
            used[y] = false;
        }
        image[x] = usize::MAX;
    }
    rec(0, g, &adj, &mut image, &mut used, &mut out);
    out
}

fn compose(p: &[usize], q: &[usize]) -> Permutation {
    q.iter().map(|&i| p[i]).collect()
}

/// A generating set for the group formed by `all`, chosen greedily.
fn generating_set(all: &[Permutation]) -> Vec<Permutation> {
    let n = all.first().map_or(0, Vec::len);
    let identity: Permutation = (0..n).collect();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut closure: HashSet<Permutation> = HashSet::from([identity.clone()]);
    for p in all {
        if closure.contains(p) {
            continue;
        }
        gens.push(p.clone());
        let mut queue: VecDeque<Permutation> = closure.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for gen in &gens {
                let y = compose(gen, &x);
                if closure.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    gens
}

#[derive(Debug, Clone, Copy)]
enum Move {
    Flip(Vertex),
    Mirror,
    Automorphism(usize),
}

/// Indexing of all rotation systems of a graph, and the moves acting on them.
pub struct SystemSpace {
    graph: SymmetricDigraph,
    neighbors: Vec<Vec<Vertex>>,
    place: Vec<u64>,
    rotation_total: u64,
    total: u64,
    edge_index: std::collections::HashMap<(Vertex, Vertex), usize>,
    automorphisms: Vec<Permutation>,
    moves: Vec<Move>,
}

impl SystemSpace {
    pub fn new(graph: SymmetricDigraph, budget: u128) -> Result<Self> {
        if !graph.is_connected() {
            return Err(Error::Domain("graph is disconnected".into()));
        }
        if let Some(x) = (0..graph.vertex_count()).find(|&x| graph.degree(x) < 2) {
            return Err(Error::Domain(format!("vertex {x} has degree < 2")));
        }
        let raw = raw_system_count(&graph);
        if raw > budget {
            return Err(Error::Budget { raw, budget });
        }
        let n = graph.vertex_count();
        let neighbors: Vec<_> = (0..n).map(|x| graph.neighbors(x)).collect();
        let mut place = Vec::with_capacity(n);
        let mut acc = 1u64;
        for nb in &neighbors {
            place.push(acc);
            acc *= factorial(nb.len() - 1);
        }
        let edge_index = graph
            .edges()
            .enumerate()
            .map(|(k, (u, v))| ((u.min(v), u.max(v)), k))
            .collect();
        let automorphisms = generating_set(&automorphisms(&graph));
        let mut moves: Vec<Move> = (0..n).map(Move::Flip).collect();
        moves.push(Move::Mirror);
        moves.extend((0..automorphisms.len()).map(Move::Automorphism));
        Ok(Self {
            total: acc << graph.edge_count(),
            rotation_total: acc,
            graph,
            neighbors,
            place,
            edge_index,
            automorphisms,
            moves,
        })
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    fn decode(&self, index: u64) -> (Vec<Vec<Vertex>>, u64) {
        let mut rot = index % self.rotation_total;
        let twists = index / self.rotation_total;
        let orders = self
            .neighbors
            .iter()
            .map(|nb| {
                let m = nb.len() - 1;
                let base = factorial(m);
                let r = rot % base;
                rot /= base;
                std::iter::once(nb[0])
                    .chain(lehmer_unrank(r, m).into_iter().map(|i| nb[i + 1]))
                    .collect()
            })
            .collect();
        (orders, twists)
    }

    fn encode(&self, orders: &[Vec<Vertex>], twists: u64) -> u64 {
        let mut index = 0;
        for (x, order) in orders.iter().enumerate() {
            let nb = &self.neighbors[x];
            let start = order.iter().position(|&y| y == nb[0]).expect("neighbor present");
            let d = order.len();
            let perm: Vec<usize> = (1..d)
                .map(|i| {
                    let y = order[(start + i) % d];
                    nb.binary_search(&y).expect("neighbor present") - 1
                })
                .collect();
            index += lehmer_rank(&perm) * self.place[x];
        }
        index + twists * self.rotation_total
    }

    fn edge(&self, u: Vertex, v: Vertex) -> usize {
        self.edge_index[&(u.min(v), u.max(v))]
    }

    pub fn system(&self, index: u64) -> RotationSystem {
        let (orders, twists) = self.decode(index);
        let twist = (0..self.graph.edge_count()).map(|k| twists >> k & 1 == 1).collect();
        RotationSystem::from_neighbor_orders(self.graph.clone(), &orders, twist).expect("valid by construction")
    }

    pub fn index_of(&self, rs: &RotationSystem) -> u64 {
        let twists = rs
            .twists()
            .iter()
            .enumerate()
            .fold(0u64, |acc, (k, &t)| acc | (u64::from(t) << k));
        self.encode(&rs.neighbor_orders(), twists)
    }

    fn apply(&self, mv: Move, orders: &[Vec<Vertex>], twists: u64) -> (Vec<Vec<Vertex>>, u64) {
        match mv {
            Move::Flip(x) => {
                let mut o = orders.to_vec();
                o[x].reverse();
                let mut t = twists;
                for &y in &self.neighbors[x] {
                    t ^= 1 << self.edge(x, y);
                }
                (o, t)
            }
            Move::Mirror => {
                let o = orders.iter().map(|ord| ord.iter().rev().copied().collect()).collect();
                (o, twists)
            }
            Move::Automorphism(i) => {
                let p = &self.automorphisms[i];
                let mut o = vec![Vec::new(); orders.len()];
                for (x, ord) in orders.iter().enumerate() {
                    o[p[x]] = ord.iter().map(|&y| p[y]).collect();
                }
                let mut t = 0;
                for (u, v) in self.graph.edges() {
                    if twists >> self.edge(u, v) & 1 == 1 {
                        t |= 1 << self.edge(p[u], p[v]);
                    }
                }
                (o, t)
            }
        }
    }

    /// Indices of one application of every move to `index`.
    pub fn neighbors_of(&self, index: u64) -> Vec<u64> {
        let (orders, twists) = self.decode(index);
        self.moves
            .iter()
            .map(|&mv| {
                let (o, t) = self.apply(mv, &orders, twists);
                self.encode(&o, t)
            })
            .collect()
    }

    /// Orbit representatives (smallest index) and orbit sizes.
    pub fn orbits(&self) -> Vec<(u64, usize)> {
        let mut visited = vec![false; self.total as usize];
        let mut out = Vec::new();
        for start in 0..self.total {
            if visited[start as usize] {
                continue;
            }
            visited[start as usize] = true;
            let mut queue = vec![start];
            let mut size = 0;
            while let Some(i) = queue.pop() {
                size += 1;
                for j in self.neighbors_of(i) {
                    if !visited[j as usize] {
                        visited[j as usize] = true;
                        queue.push(j);
                    }
                }
            }
            out.push((start, size));
        }
        out
    }

    /// All members of the orbit of `index`.
    pub fn orbit(&self, index: u64) -> Vec<u64> {
        let mut seen = HashSet::from([index]);
        let mut queue = vec![index];
        while let Some(i) = queue.pop() {
            for j in self.neighbors_of(i) {
                if seen.insert(j) {
                    queue.push(j);
                }
            }
        }
        let mut v: Vec<_> = seen.into_iter().collect();
        v.sort_unstable();
        v
    }
}

#[derive(Debug, Clone)]
pub struct EmbeddingClass {
    pub representative: RotationSystem,
    /// Raw index of the representative.
    pub index: u64,
    pub orbit_size: usize,
    pub surface: Surface,
    /// Face lengths, descending.
    pub face_lengths: Vec<usize>,
    /// Self-intersection edges of each face, aligned with `face_lengths`.
    pub self_intersections: Vec<usize>,
    /// `lim delta^2 E[E]` as `a -> 1`.
    pub limit: f64,
}

impl EmbeddingClass {
    pub fn from_system(representative: RotationSystem, index: u64, orbit_size: usize) -> Result<Self> {
        let fd = representative.trace_faces();
        let mut profile: Vec<(usize, usize)> = fd.faces.iter().map(|f| (f.len(), f.self_intersections().len())).collect();
        profile.sort_unstable_by(|a, b| b.cmp(a));
        let surface = representative.euler_genus()?;
        let limit = limit_comfortability(&fd, representative.graph().edge_count());
        Ok(Self {
            representative,
            index,
            orbit_size,
            surface,
            face_lengths: profile.iter().map(|p| p.0).collect(),
            self_intersections: profile.iter().map(|p| p.1).collect(),
            limit,
        })
    }
}

/// All embedding classes of `g`, in order of representative index.
pub fn enumerate_embeddings(g: &SymmetricDigraph, budget: u128, exec: Execution) -> Result<Vec<EmbeddingClass>> {
    let space = SystemSpace::new(g.clone(), budget)?;
    let orbits = space.orbits();
    exec.map(&orbits, |&(index, size)| EmbeddingClass::from_system(space.system(index), index, size))
        .into_iter()
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankRow {
    /// Position of the class in the input slice.
    pub class: usize,
    pub value: f64,
    pub limit: f64,
    /// Rows sharing a tie group have equal `value` up to rounding.
    pub tie_group: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    /// Sorted by `E[E]`, descending.
    pub rows: Vec<RankRow>,
    /// Class positions sorted by the limit coefficient, descending.
    pub limit_order: Vec<usize>,
}

const TIE_TOL: f64 = 1e-9;

/// Ranks classes by `E[E]` under `coin`, and by the `a -> 1` limit.
pub fn rank_by_comfortability(classes: &[EmbeddingClass], coin: &Coin, exec: Execution) -> Result<Ranking> {
    let values = exec.map(classes, |c| {
        let bg = BlowUpGraph::hedgehog(&c.representative)?;
        average_comfortability(&bg, coin).map(|a| a.value)
    });
    let values = values.into_iter().collect::<Result<Vec<f64>>>()?;
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    let mut rows: Vec<RankRow> = Vec::with_capacity(order.len());
    for &i in &order {
        let tie_group = match rows.last() {
            Some(prev) if (prev.value - values[i]).abs() <= TIE_TOL * prev.value.abs().max(1.0) => prev.tie_group,
            Some(prev) => prev.tie_group + 1,
            None => 0,
        };
        rows.push(RankRow {
            class: i,
            value: values[i],
            limit: classes[i].limit,
            tie_group,
        });
    }
    let mut limit_order: Vec<usize> = (0..classes.len()).collect();
    limit_order.sort_by(|&i, &j| classes[j].limit.total_cmp(&classes[i].limit).then(i.cmp(&j)));
    Ok(Ranking { rows, limit_order })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GenusRange {
    pub orientable: Option<(usize, usize)>,
    pub nonorientable: Option<(usize, usize)>,
}

/// Observed minimal and maximal genus per orientability.
pub fn min_max_genus(classes: &[EmbeddingClass]) -> GenusRange {
    let mut out = GenusRange::default();
    for c in classes {
        let slot = if c.surface.is_orientable() { &mut out.orientable } else { &mut out.nonorientable };
        let g = c.surface.genus();
        *slot = Some(match *slot {
            None => (g, g),
            Some((lo, hi)) => (lo.min(g), hi.max(g)),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lehmer_round_trip() {
        for m in 0..6 {
            for r in 0..factorial(m) {
                assert_eq!(lehmer_rank(&lehmer_unrank(r, m)), r);
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let space = SystemSpace::new(SymmetricDigraph::complete(4).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(space.len(), 1024);
        for i in 0..space.len() {
            assert_eq!(space.index_of(&space.system(i)), i);
        }
    }

    #[test]
    fn triangle_has_two_classes() {
        let classes = enumerate_embeddings(&SymmetricDigraph::cycle(3).unwrap(), DEFAULT_BUDGET, Execution::Sequential).unwrap();
        let mut profile: Vec<_> = classes.iter().map(|c| (c.surface, c.face_lengths.clone())).collect();
        profile.sort_by_key(|p| p.1.len());
        assert_eq!(
            profile,
            vec![
                (Surface::NonOrientable { crosscaps: 1 }, vec![6]),
                (Surface::Orientable { genus: 0 }, vec![3, 3]),
            ]
        );
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&SymmetricDigraph::complete(4).unwrap()).len(), 24);
        assert_eq!(automorphisms(&SymmetricDigraph::cycle(5).unwrap()).len(), 10);
        let gens = generating_set(&automorphisms(&SymmetricDigraph::complete(5).unwrap()));
        assert!(gens.len() <= 4);
    }

    #[test]
    fn budget_is_enforced() {
        let k6 = SymmetricDigraph::complete(6).unwrap();
        assert!(matches!(
            enumerate_embeddings(&k6, DEFAULT_BUDGET, Execution::Sequential),
            Err(Error::Budget { .. })
        ));
    }
}
