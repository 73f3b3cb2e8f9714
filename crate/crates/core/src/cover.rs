//! The double cover `G^tau` and its blow-up graph with hedgehog tails.
//!
//! Vertex `(x, s)` of the cover has id `2x + s`. Edge `k = {u, v}` of `G` with
//! twist `t` lifts to cover edges `2k + s` joining `(u, s)` and `(v, s ^ t)`.
//! Blow-up vertices are cover arcs. Island arc `I(v)` runs from `v` to
//! `rho~(v)`, bridge `B(v)` from `v` to its reverse `v ^ 1`.

use crate::error::Result;
use crate::graph::{Arc, SymmetricDigraph, Vertex};
use crate::rotation::{FacialDecomposition, Flag, RotationSystem};

#[derive(Debug, Clone)]
pub struct DoubleCover {
    base: RotationSystem,
    system: RotationSystem,
}

impl DoubleCover {
    pub fn new(base: &RotationSystem) -> Result<Self> {
        let g = base.graph();
        let mut edges = Vec::with_capacity(2 * g.edge_count());
        for k in 0..g.edge_count() {
            let (u, v) = g.edge_ends(k);
            let t = base.twist(k) as usize;
            for s in 0..2 {
                edges.push((2 * u + s, 2 * v + (s ^ t)));
            }
        }
        let cover = SymmetricDigraph::from_edges(2 * g.vertex_count(), &edges)?;
        let mut rotation = vec![0; cover.arc_count()];
        let mut this = Self {
            base: base.clone(),
            system: RotationSystem::sorted(cover.clone())?,
        };
        for (a, slot) in rotation.iter_mut().enumerate() {
            let s = this.project(a);
            let turned = if s.sheet == 0 { base.rotate(s.arc) } else { base.rotate_back(s.arc) };
            *slot = this.lift(Flag::new(turned, s.sheet));
        }
        this.system = RotationSystem::from_rotation(cover, rotation, vec![false; 2 * g.edge_count()])?;
        Ok(this)
    }

    pub fn base(&self) -> &RotationSystem {
        &self.base
    }

    /// The rotation system `(G^tau, rho + rho^-1, 0)`.
    pub fn system(&self) -> &RotationSystem {
        &self.system
    }

    pub fn graph(&self) -> &SymmetricDigraph {
        self.system.graph()
    }

    pub fn sheet(v: Vertex) -> u8 {
        (v & 1) as u8
    }

    pub fn base_vertex(v: Vertex) -> Vertex {
        v >> 1
    }

    /// Cover arc over base arc `s.arc` whose terminus lies on sheet `s.sheet`.
    pub fn lift(&self, s: Flag) -> Arc {
        let k = SymmetricDigraph::edge_of(s.arc);
        let t = self.base.twist(k) as usize;
        let p = s.sheet as usize;
        if s.arc.is_multiple_of(2) {
            2 * (2 * k + (p ^ t))
        } else {
            2 * (2 * k + p) + 1
        }
    }

    pub fn project(&self, a: Arc) -> Flag {
        let lifted_edge = a >> 1;
        let k = lifted_edge >> 1;
        let s = (lifted_edge & 1) as u8;
        if a.is_multiple_of(2) {
            Flag::new(2 * k, s ^ self.base.twist(k) as u8)
        } else {
            Flag::new(2 * k + 1, s)
        }
    }

    pub fn component_count(&self) -> usize {
        if self.graph().is_connected() {
            1
        } else {
            2
        }
    }
}

/// A face of the cover, as a cyclic sequence of cover arcs `f_0, ..., f_{n-1}`
/// with `f_{j+1} = sigma(rho~(f_j))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverFace {
    pub arcs: Vec<Arc>,
    /// Type of the base edge under each arc.
    pub twists: Vec<bool>,
    /// Index of the face of `G` this one covers.
    pub base_face: usize,
    /// Whether this is the chiral partner of the reported face.
    pub chiral: bool,
}

impl CoverFace {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct BlowUpGraph {
    cover: DoubleCover,
    faces: FacialDecomposition,
    cover_faces: Vec<CoverFace>,
    position: Vec<(usize, usize)>,
    rot: Vec<Arc>,
    rot_inv: Vec<Arc>,
    bridge_twist: Vec<bool>,
    boundary: Vec<bool>,
}

impl BlowUpGraph {
    /// Blow-up without tails.
    pub fn new(cover: DoubleCover) -> Self {
        let base = cover.base().clone();
        let faces = base.trace_faces();
        let n = cover.graph().arc_count();
        let mut cover_faces = Vec::with_capacity(2 * faces.faces.len());
        for (i, (f, p)) in faces.faces.iter().zip(&faces.partners).enumerate() {
            for (face, chiral) in [(f, false), (p, true)] {
                cover_faces.push(CoverFace {
                    arcs: face.flags().iter().map(|&s| cover.lift(s)).collect(),
                    twists: (0..face.len()).map(|j| face.twist_at(j)).collect(),
                    base_face: i,
                    chiral,
                });
            }
        }
        let mut position = vec![(usize::MAX, 0); n];
        for (fi, f) in cover_faces.iter().enumerate() {
            for (j, &a) in f.arcs.iter().enumerate() {
                position[a] = (fi, j);
            }
        }
        let sys = cover.system();
        let rot: Vec<_> = (0..n).map(|a| sys.rotate(a)).collect();
        let rot_inv: Vec<_> = (0..n).map(|a| sys.rotate_back(a)).collect();
        let bridge_twist = (0..n).map(|a| base.arc_twist(cover.project(a).arc)).collect();
        Self {
            cover,
            faces,
            cover_faces,
            position,
            rot,
            rot_inv,
            bridge_twist,
            boundary: vec![false; n],
        }
    }

    pub fn from_system(rs: &RotationSystem) -> Result<Self> {
        Ok(Self::new(DoubleCover::new(rs)?))
    }

    /// Tails on every island arc.
    pub fn hedgehog(rs: &RotationSystem) -> Result<Self> {
        Ok(Self::from_system(rs)?.attach_hedgehog())
    }

    pub fn attach_hedgehog(mut self) -> Self {
        self.boundary.iter_mut().for_each(|b| *b = true);
        self
    }

    /// Tails on the island arcs flagged in `boundary`.
    pub fn with_boundary(mut self, boundary: Vec<bool>) -> Self {
        assert_eq!(boundary.len(), self.boundary.len());
        self.boundary = boundary;
        self
    }

    pub fn cover(&self) -> &DoubleCover {
        &self.cover
    }

    pub fn base(&self) -> &RotationSystem {
        self.cover.base()
    }

    pub fn faces(&self) -> &FacialDecomposition {
        &self.faces
    }

    /// Faces of the cover: `2i` covers base face `i`, `2i + 1` is its partner.
    pub fn cover_faces(&self) -> &[CoverFace] {
        &self.cover_faces
    }

    /// `(cover face, position)` of cover arc `a`.
    pub fn position(&self, a: Arc) -> (usize, usize) {
        self.position[a]
    }

    /// Number of blow-up vertices, equal to the number of cover arcs.
    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn rho(&self, v: Arc) -> Arc {
        self.rot[v]
    }

    pub fn rho_inv(&self, v: Arc) -> Arc {
        self.rot_inv[v]
    }

    pub fn reverse(v: Arc) -> Arc {
        v ^ 1
    }

    pub fn bridge_twist(&self, v: Arc) -> bool {
        self.bridge_twist[v]
    }

    pub fn is_boundary(&self, v: Arc) -> bool {
        self.boundary[v]
    }

    pub fn boundary(&self) -> &[bool] {
        &self.boundary
    }

    pub fn is_hedgehog(&self) -> bool {
        self.boundary.iter().all(|&b| b)
    }

    /// Island arc `I(v)` as the pair of blow-up vertices it joins.
    pub fn island_arc(&self, v: Arc) -> (Arc, Arc) {
        (v, self.rot[v])
    }

    /// Bridge `B(v)` as the pair of blow-up vertices it joins.
    pub fn bridge_arc(&self, v: Arc) -> (Arc, Arc) {
        (v, v ^ 1)
    }

    /// Bridge ending at the origin of island arc `I(v)`.
    pub fn br(&self, v: Arc) -> Arc {
        v ^ 1
    }

    /// Bridge ending at the terminus of island arc `I(v)`.
    pub fn br_sharp(&self, v: Arc) -> Arc {
        self.rot[v] ^ 1
    }

    /// Island arc ending at the origin of bridge `B(v)`.
    pub fn is(&self, v: Arc) -> Arc {
        self.rot_inv[v]
    }

    /// Island arc starting at the origin of bridge `B(v)`.
    pub fn is_sharp(&self, v: Arc) -> Arc {
        v
    }

    /// Tail attached to the island arc `I(is_sharp(reverse(bridge)))`.
    pub fn tail_of_bridge(bridge: Arc) -> Arc {
        bridge ^ 1
    }

    pub fn bridge_of_tail(tail: Arc) -> Arc {
        tail ^ 1
    }

    /// Cover vertex whose island contains blow-up vertex `v`.
    pub fn island_of(&self, v: Arc) -> Vertex {
        self.cover.graph().terminus(v)
    }

    /// Island cycles, one per cover vertex, following `rho~`.
    pub fn islands(&self) -> Vec<Vec<Arc>> {
        let g = self.cover.graph();
        (0..g.vertex_count())
            .map(|y| {
                let start = g.incoming(y)[0];
                let mut cyc = vec![start];
                let mut v = self.rot[start];
                while v != start {
                    cyc.push(v);
                    v = self.rot[v];
                }
                cyc
            })
            .collect()
    }

    /// The extended facial walk through island arcs and bridges of cover face
    /// `fi`: `(island arc, bridge)` pairs with the bridge leaving the island arc.
    pub fn extended_walk(&self, fi: usize) -> Vec<(Arc, Arc)> {
        let f = &self.cover_faces[fi];
        let n = f.len();
        (0..n)
            .map(|j| {
                let bridge = f.arcs[(j + 1) % n] ^ 1;
                (self.is(bridge), bridge)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn lift_and_project_are_inverse() {
        for rs in [catalog::k4_sphere(), catalog::k4_projective_plane()] {
            let dc = DoubleCover::new(&rs).unwrap();
            for a in 0..dc.graph().arc_count() {
                assert_eq!(dc.lift(dc.project(a)), a);
                let s = dc.project(a);
                assert_eq!(DoubleCover::base_vertex(dc.graph().terminus(a)), rs.graph().terminus(s.arc));
                assert_eq!(DoubleCover::sheet(dc.graph().terminus(a)), s.sheet);
            }
        }
    }

    #[test]
    fn cover_counts_and_components() {
        let sphere = DoubleCover::new(&catalog::k4_sphere()).unwrap();
        assert_eq!(sphere.graph().vertex_count(), 8);
        assert_eq!(sphere.graph().edge_count(), 12);
        assert_eq!(sphere.component_count(), 2);
        let pp = DoubleCover::new(&catalog::k4_projective_plane()).unwrap();
        assert_eq!(pp.component_count(), 1);
        assert!(pp.system().twists().iter().all(|&t| !t));
    }

    #[test]
    fn blow_up_incidences() {
        let bg = BlowUpGraph::hedgehog(&catalog::k4_projective_plane()).unwrap();
        assert_eq!(bg.vertex_count(), 24);
        let g = bg.cover().graph();
        for v in 0..24 {
            let (o, t) = bg.island_arc(v);
            assert_eq!(g.terminus(o), g.terminus(t));
            assert_eq!(bg.bridge_arc(bg.br(v)).1, o);
            assert_eq!(bg.bridge_arc(bg.br_sharp(v)).1, t);
            assert_eq!(bg.island_arc(bg.is(v)).1, v);
            assert_eq!(bg.island_arc(bg.is_sharp(v)).0, v);
            assert_ne!(bg.is(v), bg.is_sharp(v));
            assert_eq!(bg.rho(bg.is(v)), bg.is_sharp(v));
        }
        let islands = bg.islands();
        assert_eq!(islands.len(), 8);
        assert!(islands.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn cover_faces_are_orbits_of_the_cover_walk() {
        let bg = BlowUpGraph::hedgehog(&catalog::k4_projective_plane()).unwrap();
        let mut seen = vec![0; bg.vertex_count()];
        for f in bg.cover_faces() {
            for j in 0..f.len() {
                let next = bg.rho(f.arcs[j]) ^ 1;
                assert_eq!(next, f.arcs[(j + 1) % f.len()]);
                seen[f.arcs[j]] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
        let mut traced: Vec<usize> = bg.cover().system().trace_faces().lengths();
        let mut ours: Vec<usize> = bg.cover_faces().iter().map(CoverFace::len).collect();
        traced.sort();
        ours.sort();
        assert_eq!(traced, ours);
    }

    #[test]
    fn extended_walks_cover_every_arc_once() {
        let bg = BlowUpGraph::hedgehog(&catalog::k4_sphere()).unwrap();
        let mut islands = [0; 24];
        let mut bridges = [0; 24];
        for fi in 0..bg.cover_faces().len() {
            let walk = bg.extended_walk(fi);
            for (j, &(xi, b)) in walk.iter().enumerate() {
                islands[xi] += 1;
                bridges[b] += 1;
                let (next_xi, _) = walk[(j + 1) % walk.len()];
                assert_eq!(bg.br(next_xi), b);
            }
        }
        assert!(islands.iter().chain(&bridges).all(|&c| c == 1));
    }
}
