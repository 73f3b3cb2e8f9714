//! Finite simple symmetric digraphs. Arc `2k` and `2k + 1` are the two
//! orientations of edge `k`, so the reversal is `e ^ 1`.

use crate::error::{invariant, Error, Result};

pub type Vertex = usize;
pub type Arc = usize;
pub type Edge = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricDigraph {
    vertex_count: usize,
    ends: Vec<(Vertex, Vertex)>,
    incoming: Vec<Vec<Arc>>,
}

impl SymmetricDigraph {
    /// Builds a graph from undirected edges. Arc `2k` runs `u -> v` for the
    /// k-th pair `(u, v)`.
    pub fn from_edges(vertex_count: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut ends = Vec::with_capacity(2 * edges.len());
        let mut incoming = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Domain(format!(
                    "edge ({u}, {v}) refers to a vertex outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(invariant("simple graph", format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(invariant("simple graph", format!("repeated edge {{{u}, {v}}}")));
            }
            incoming[v].push(ends.len());
            ends.push((u, v));
            incoming[u].push(ends.len());
            ends.push((v, u));
        }
        for list in &mut incoming {
            list.sort_unstable();
        }
        Ok(Self {
            vertex_count,
            ends,
            incoming,
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("complete graph needs n >= 3, got {n}")));
        }
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("cycle graph needs n >= 3, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arc_count(&self) -> usize {
        self.ends.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len() / 2
    }

    pub fn origin(&self, e: Arc) -> Vertex {
        self.ends[e].0
    }

    pub fn terminus(&self, e: Arc) -> Vertex {
        self.ends[e].1
    }

    pub fn reverse(e: Arc) -> Arc {
        e ^ 1
    }

    pub fn edge_of(e: Arc) -> Edge {
        e >> 1
    }

    /// Endpoints of edge `k` as stored (origin and terminus of arc `2k`).
    pub fn edge_ends(&self, k: Edge) -> (Vertex, Vertex) {
        self.ends[2 * k]
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.edge_count()).map(|k| self.edge_ends(k))
    }

    /// Arcs with terminus `x`, in increasing id order.
    pub fn incoming_arcs(&self, x: Vertex) -> Result<&[Arc]> {
        self.incoming
            .get(x)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Domain(format!("unknown vertex {x}")))
    }

    pub(crate) fn incoming(&self, x: Vertex) -> &[Arc] {
        &self.incoming[x]
    }

    pub fn degree(&self, x: Vertex) -> usize {
        self.incoming[x].len()
    }

    /// Sorted neighbor list of `x`.
    pub fn neighbors(&self, x: Vertex) -> Vec<Vertex> {
        let mut out: Vec<_> = self.incoming[x].iter().map(|&e| self.origin(e)).collect();
        out.sort_unstable();
        out
    }

    /// The arc `u -> v`, if the edge exists.
    pub fn arc_between(&self, u: Vertex, v: Vertex) -> Option<Arc> {
        self.incoming
            .get(v)?
            .iter()
            .copied()
            .find(|&e| self.origin(e) == u)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &e in &self.incoming[x] {
                let y = self.origin(e);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Breadth-first tree from vertex 0: parent arc (parent -> child) per
    /// vertex, plus the visiting order. Errors on a disconnected graph.
    pub fn bfs_tree(&self) -> Result<(Vec<Option<Arc>>, Vec<Vertex>)> {
        let n = self.vertex_count;
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = std::collections::VecDeque::new();
        if n > 0 {
            seen[0] = true;
            queue.push_back(0);
        }
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for y in self.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = self.arc_between(x, y);
                    queue.push_back(y);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Domain("graph is disconnected".into()));
        }
        Ok((parent, order))
    }
}
