//! Rotation systems `(G, rho, tau)`, facial walks, genus and orientability.

use crate::error::{invariant, Result};
use crate::graph::{Arc, Edge, SymmetricDigraph, Vertex};

/// An arc together with the sheet of its terminus in the double cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag {
    pub arc: Arc,
    pub sheet: u8,
}

impl Flag {
    pub fn new(arc: Arc, sheet: u8) -> Self {
        Self { arc, sheet }
    }

    /// Dense index `2 * arc + sheet`.
    pub fn index(self) -> usize {
        2 * self.arc + self.sheet as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::new(i / 2, (i % 2) as u8)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Surface {
    Orientable { genus: usize },
    NonOrientable { crosscaps: usize },
}

impl Surface {
    pub fn is_orientable(self) -> bool {
        matches!(self, Surface::Orientable { .. })
    }

    /// `g` for orientable surfaces, `k` otherwise.
    pub fn genus(self) -> usize {
        match self {
            Surface::Orientable { genus } => genus,
            Surface::NonOrientable { crosscaps } => crosscaps,
        }
    }
}

impl std::fmt::Display for Surface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Surface::Orientable { genus } => write!(f, "g={genus}"),
            Surface::NonOrientable { crosscaps } => write!(f, "k={crosscaps}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    graph: SymmetricDigraph,
    rotation: Vec<Arc>,
    inverse: Vec<Arc>,
    twist: Vec<bool>,
}

impl RotationSystem {
    /// `rotation[e]` is the next incoming arc after `e` at `t(e)`;
    /// `twist[k]` is the type of edge `k`.
    pub fn from_rotation(graph: SymmetricDigraph, rotation: Vec<Arc>, twist: Vec<bool>) -> Result<Self> {
        let m = graph.arc_count();
        if rotation.len() != m {
            return Err(invariant("rotation", format!("expected {m} entries, got {}", rotation.len())));
        }
        if twist.len() != graph.edge_count() {
            return Err(invariant(
                "twist",
                format!("expected {} twist bits, got {}", graph.edge_count(), twist.len()),
            ));
        }
        let mut inverse = vec![usize::MAX; m];
        for (e, &r) in rotation.iter().enumerate() {
            if r >= m || graph.terminus(r) != graph.terminus(e) {
                return Err(invariant("rotation", format!("rotation({e}) = {r} leaves A_{}", graph.terminus(e))));
            }
            if inverse[r] != usize::MAX {
                return Err(invariant("rotation", format!("arc {r} has two preimages")));
            }
            inverse[r] = e;
        }
        for x in 0..graph.vertex_count() {
            let arcs = graph.incoming(x);
            if arcs.len() < 2 {
                return Err(invariant("degree >= 2", format!("vertex {x} has degree {}", arcs.len())));
            }
            let mut e = rotation[arcs[0]];
            let mut len = 1;
            while e != arcs[0] {
                e = rotation[e];
                len += 1;
            }
            if len != arcs.len() {
                return Err(invariant("rotation", format!("rotation at vertex {x} is not a single cycle")));
            }
        }
        Ok(Self {
            graph,
            rotation,
            inverse,
            twist,
        })
    }

    /// `orders[x]` lists the neighbors of `x` in cyclic order; the rotation
    /// sends the arc from `orders[x][i]` to the arc from `orders[x][i + 1]`.
    pub fn from_neighbor_orders(graph: SymmetricDigraph, orders: &[Vec<Vertex>], twist: Vec<bool>) -> Result<Self> {
        if orders.len() != graph.vertex_count() {
            return Err(invariant(
                "rotation",
                format!("expected {} vertex orders, got {}", graph.vertex_count(), orders.len()),
            ));
        }
        let mut rotation = vec![usize::MAX; graph.arc_count()];
        for (x, order) in orders.iter().enumerate() {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != graph.neighbors(x) {
                return Err(invariant(
                    "rotation lists neighbors",
                    format!("rotation at {x} must list each neighbor exactly once"),
                ));
            }
            let d = order.len();
            for i in 0..d {
                let from = graph.arc_between(order[i], x).expect("neighbor checked");
                let to = graph.arc_between(order[(i + 1) % d], x).expect("neighbor checked");
                rotation[from] = to;
            }
        }
        Self::from_rotation(graph, rotation, twist)
    }

    /// Rotation by increasing neighbor id at every vertex, all edges type 0.
    pub fn sorted(graph: SymmetricDigraph) -> Result<Self> {
        let orders: Vec<_> = (0..graph.vertex_count()).map(|x| graph.neighbors(x)).collect();
        let twist = vec![false; graph.edge_count()];
        Self::from_neighbor_orders(graph, &orders, twist)
    }

    pub fn graph(&self) -> &SymmetricDigraph {
        &self.graph
    }

    pub fn rotate(&self, e: Arc) -> Arc {
        self.rotation[e]
    }

    pub fn rotate_back(&self, e: Arc) -> Arc {
        self.inverse[e]
    }

    pub fn twist(&self, k: Edge) -> bool {
        self.twist[k]
    }

    pub fn twists(&self) -> &[bool] {
        &self.twist
    }

    pub fn arc_twist(&self, e: Arc) -> bool {
        self.twist[SymmetricDigraph::edge_of(e)]
    }

    pub fn set_twist(&mut self, k: Edge, value: bool) {
        self.twist[k] = value;
    }

    /// Cyclic neighbor order at `x`, starting from the smallest neighbor.
    pub fn neighbor_order(&self, x: Vertex) -> Vec<Vertex> {
        let g = &self.graph;
        let start = g
            .incoming(x)
            .iter()
            .copied()
            .min_by_key(|&e| g.origin(e))
            .expect("degree >= 2");
        let mut out = vec![g.origin(start)];
        let mut e = self.rotation[start];
        while e != start {
            out.push(g.origin(e));
            e = self.rotation[e];
        }
        out
    }

    pub fn neighbor_orders(&self) -> Vec<Vec<Vertex>> {
        (0..self.graph.vertex_count()).map(|x| self.neighbor_order(x)).collect()
    }

    /// Next state of the facial walk: `sigma(rho(e))` on sheet 0,
    /// `sigma(rho^-1(e))` on sheet 1; the sheet flips across a twisted edge.
    pub fn successor(&self, s: Flag) -> Flag {
        let turned = if s.sheet == 0 { self.rotation[s.arc] } else { self.inverse[s.arc] };
        let next = SymmetricDigraph::reverse(turned);
        Flag::new(next, s.sheet ^ self.arc_twist(next) as u8)
    }

    /// The state traversed in the opposite direction on the opposite sheet.
    pub fn chiral(&self, s: Flag) -> Flag {
        Flag::new(SymmetricDigraph::reverse(s.arc), s.sheet ^ self.arc_twist(s.arc) as u8 ^ 1)
    }

    /// All facial walks, each reported once.
    pub fn trace_faces(&self) -> FacialDecomposition {
        let n_states = 2 * self.graph.arc_count();
        let mut orbit_of = vec![usize::MAX; n_states];
        let mut orbits: Vec<Vec<Flag>> = Vec::new();
        for i in 0..n_states {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let start = Flag::from_index(i);
            let mut walk = vec![start];
            orbit_of[i] = orbits.len();
            let mut s = self.successor(start);
            while s != start {
                orbit_of[s.index()] = orbits.len();
                walk.push(s);
                s = self.successor(s);
            }
            orbits.push(walk);
        }
        let mut pairs = Vec::with_capacity(orbits.len() / 2);
        let mut done = vec![false; orbits.len()];
        for (i, walk) in orbits.iter().enumerate() {
            if done[i] {
                continue;
            }
            let j = orbit_of[self.chiral(walk[0]).index()];
            debug_assert_ne!(i, j, "a face coincides with its chiral partner");
            done[i] = true;
            done[j] = true;
            let f = canonical_rotation(walk);
            let partner: Vec<Flag> = walk.iter().rev().map(|&s| self.chiral(s)).collect();
            let p = canonical_rotation(&partner);
            let (rep, other) = if f <= p { (f, p) } else { (p, f) };
            pairs.push((self.face(rep), self.face(other)));
        }
        pairs.sort_by(|a, b| a.0.flags.cmp(&b.0.flags));
        let (faces, partners) = pairs.into_iter().unzip();
        FacialDecomposition { faces, partners }
    }

    fn face(&self, flags: Vec<Flag>) -> Face {
        let twists = flags.iter().map(|s| self.arc_twist(s.arc)).collect();
        Face { flags, twists }
    }

    /// Operation i-v: flip vertices along a BFS tree from vertex 0 until every
    /// tree edge is type 0; orientable iff no type-1 edge remains.
    pub fn detect_orientability(&self) -> Result<(bool, RotationSystem)> {
        let (parent, order) = self.graph.bfs_tree()?;
        let mut rs = self.clone();
        let mut in_tree = vec![false; self.graph.edge_count()];
        for &y in &order {
            if let Some(e) = parent[y] {
                let k = SymmetricDigraph::edge_of(e);
                in_tree[k] = true;
                if rs.twist[k] {
                    rs = rs.flip_vertex(y);
                }
            }
        }
        let orientable = (0..self.graph.edge_count()).all(|k| in_tree[k] || !rs.twist[k]);
        Ok((orientable, rs))
    }

    pub fn euler_genus(&self) -> Result<Surface> {
        let (orientable, _) = self.detect_orientability()?;
        let faces = self.trace_faces().faces.len();
        Ok(surface_from_counts(
            orientable,
            self.graph.vertex_count(),
            self.graph.edge_count(),
            faces,
        ))
    }

    /// Operation (*): reverse the rotation at `x` and toggle the type of
    /// every edge at `x`.
    pub fn flip_vertex(&self, x: Vertex) -> RotationSystem {
        let mut rs = self.clone();
        for &e in self.graph.incoming(x) {
            rs.rotation[e] = self.inverse[e];
            rs.inverse[e] = self.rotation[e];
            rs.twist[SymmetricDigraph::edge_of(e)] ^= true;
        }
        rs
    }

    /// The chiral system `(G, rho^-1, tau)`.
    pub fn mirror(&self) -> RotationSystem {
        let mut rs = self.clone();
        std::mem::swap(&mut rs.rotation, &mut rs.inverse);
        rs
    }

    /// Parity of the number of type-1 edges along a closed walk.
    pub fn twist_parity(&self, walk: &[Arc]) -> bool {
        walk.iter().fold(false, |acc, &e| acc ^ self.arc_twist(e))
    }
}

pub(crate) fn surface_from_counts(orientable: bool, v: usize, e: usize, f: usize) -> Surface {
    let euler = 2 + e as i64 - v as i64 - f as i64;
    debug_assert!(euler >= 0);
    if orientable {
        Surface::Orientable {
            genus: (euler / 2) as usize,
        }
    } else {
        Surface::NonOrientable {
            crosscaps: euler as usize,
        }
    }
}

fn canonical_rotation(walk: &[Flag]) -> Vec<Flag> {
    let start = (0..walk.len()).min_by_key(|&i| walk[i]).unwrap_or(0);
    walk[start..].iter().chain(&walk[..start]).copied().collect()
}

/// A self-intersection of a face: both orientations of `edge` lie on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelfIntersection {
    pub edge: Edge,
    /// Position of the first of the two arcs along the face.
    pub first: usize,
    /// Position of the reversed arc.
    pub second: usize,
    /// Steps from `first` to `second`.
    pub forward: usize,
    /// Steps from `second` back to `first`; `forward + backward = |f|`.
    pub backward: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    flags: Vec<Flag>,
    twists: Vec<bool>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.flags.iter().map(|s| s.arc)
    }

    /// Type of the edge traversed at position `j`.
    pub fn twist_at(&self, j: usize) -> bool {
        self.twists[j]
    }

    /// Steps along the face from position `from` to position `to`, in `1..=|f|`.
    pub fn dist(&self, from: usize, to: usize) -> usize {
        let n = self.len();
        let d = (to + n - from) % n;
        if d == 0 {
            n
        } else {
            d
        }
    }

    pub fn self_intersections(&self) -> Vec<SelfIntersection> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            let rev = SymmetricDigraph::reverse(self.flags[i].arc);
            for j in i + 1..n {
                if self.flags[j].arc == rev {
                    out.push(SelfIntersection {
                        edge: SymmetricDigraph::edge_of(rev),
                        first: i,
                        second: j,
                        forward: self.dist(i, j),
                        backward: self.dist(j, i),
                    });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacialDecomposition {
    /// One representative per face.
    pub faces: Vec<Face>,
    /// `partners[i]` is the chiral partner of `faces[i]`.
    pub partners: Vec<Face>,
}

impl FacialDecomposition {
    pub fn lengths(&self) -> Vec<usize> {
        self.faces.iter().map(Face::len).collect()
    }

    /// Face lengths in descending order, e.g. `[6, 3, 3]`.
    pub fn length_multiset(&self) -> Vec<usize> {
        let mut l = self.lengths();
        l.sort_unstable_by(|a, b| b.cmp(a));
        l
    }

    /// `(face, position)` of a traced state; `None` if it lies on a partner.
    pub fn face_of(&self, s: Flag) -> Option<(usize, usize)> {
        self.faces
            .iter()
            .enumerate()
            .find_map(|(i, f)| f.flags.iter().position(|&t| t == s).map(|p| (i, p)))
    }

    /// Number of self-intersection edges per face.
    pub fn self_intersection_counts(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.self_intersections().len()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, k4_sphere};

    #[test]
    fn sphere_and_projective_plane() {
        let rs = k4_sphere();
        let fd = rs.trace_faces();
        assert_eq!(fd.length_multiset(), vec![3, 3, 3, 3]);
        assert_eq!(rs.euler_genus().unwrap(), Surface::Orientable { genus: 0 });

        let pp = catalog::k4_projective_plane();
        assert_eq!(pp.trace_faces().length_multiset(), vec![6, 3, 3]);
        assert_eq!(pp.euler_genus().unwrap(), Surface::NonOrientable { crosscaps: 1 });
    }

    #[test]
    fn cycle_has_two_faces() {
        for n in 3..8 {
            let rs = RotationSystem::sorted(SymmetricDigraph::cycle(n).unwrap()).unwrap();
            assert_eq!(rs.trace_faces().lengths(), vec![n, n]);
            assert_eq!(rs.euler_genus().unwrap(), Surface::Orientable { genus: 0 });
        }
    }

    #[test]
    fn rejects_bad_rotation_input() {
        let g = SymmetricDigraph::complete(4).unwrap();
        let orders = vec![vec![1, 2, 2], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]];
        assert!(RotationSystem::from_neighbor_orders(g.clone(), &orders, vec![false; 6]).is_err());
        let p3 = SymmetricDigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(RotationSystem::sorted(p3).is_err());
        assert!(RotationSystem::sorted(g.clone()).is_ok());
        let mut rot: Vec<_> = (0..12).collect();
        rot.swap(0, 1);
        assert!(RotationSystem::from_rotation(g, rot, vec![false; 6]).is_err());
    }

    #[test]
    fn flip_and_mirror_are_involutions() {
        let mut rs = k4_sphere();
        rs.set_twist(2, true);
        for x in 0..4 {
            assert_eq!(rs.flip_vertex(x).flip_vertex(x), rs);
        }
        assert_eq!(rs.mirror().mirror(), rs);
        assert_eq!(rs.mirror().trace_faces().length_multiset(), rs.trace_faces().length_multiset());
    }

    #[test]
    fn neighbor_order_round_trip() {
        let rs = k4_sphere();
        assert_eq!(rs.neighbor_order(1), vec![0, 3, 2]);
        let again = RotationSystem::from_neighbor_orders(rs.graph().clone(), &rs.neighbor_orders(), rs.twists().to_vec())
            .unwrap();
        assert_eq!(again, rs);
    }
}
