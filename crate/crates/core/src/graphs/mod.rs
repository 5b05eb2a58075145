//! Simple undirected graphs, Paley graphs over prime fields, triangles and
//! induced-subgraph search.
//!
//! Vertices are always `0..n`. Edges are stored normalized (`u < v`) in a
//! sorted set, with a dense adjacency table alongside for O(1) lookups.

mod induced;
mod json;
mod paley;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use induced::{find_induced_copies, first_induced_copy, induced_copy_sets, MAX_PATTERN_ORDER};
pub use json::GraphJson;
pub use paley::{
    apply_automorphism, is_prime, paley, quadratic_residues, Automorphism, ClassCycle,
    EdgeClassLabel, PaleyParams,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("{0} is not congruent to 1 mod 4; Paley adjacency would not be symmetric")]
    NotOneModFour(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("duplicate vertex {0} in vertex set")]
    DuplicateVertex(usize),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("{a} is not a nonzero square mod {q}")]
    NotAResidue { a: usize, q: usize },
    #[error("map is not an automorphism: ({0}, {1}) changes adjacency")]
    NotAnAutomorphism(usize, usize),
    #[error("pattern has {size} vertices, enumeration limit is {limit}")]
    PatternTooLarge { size: usize, limit: usize },
    #[error("edge class {k} splits into {cycles} cycles")]
    ClassSplits { k: usize, cycles: usize },
    #[error("invalid graph description: {0}")]
    Json(String),
}

/// An undirected edge with endpoints normalized so that `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(usize, usize);

impl Edge {
    /// Normalizes the endpoint order. Panics on a self-loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop is not an edge");
        Edge(a.min(b), a.max(b))
    }

    pub fn try_new(a: usize, b: usize) -> Option<Self> {
        (a != b).then(|| Edge::new(a, b))
    }

    pub fn u(self) -> usize {
        self.0
    }

    pub fn v(self) -> usize {
        self.1
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint other than `x`, if `x` is an endpoint.
    pub fn other(self, x: usize) -> Option<usize> {
        if self.0 == x {
            Some(self.1)
        } else if self.1 == x {
            Some(self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0, self.1].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[usize; 2]>::deserialize(d)?;
        Edge::try_new(a, b).ok_or_else(|| serde::de::Error::custom(format!("self-loop at {a}")))
    }
}

/// A triangle, stored as a sorted vertex triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triangle(pub [usize; 3]);

impl Triangle {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        let mut t = [a, b, c];
        t.sort_unstable();
        Triangle(t)
    }

    pub fn vertices(&self) -> [usize; 3] {
        self.0
    }

    pub fn edges(&self) -> [Edge; 3] {
        let [a, b, c] = self.0;
        [Edge::new(a, b), Edge::new(a, c), Edge::new(b, c)]
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "Δ({a},{b},{c})")
    }
}

/// A finite simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<Edge>,
    adj: Vec<Vec<bool>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges (in either
    /// orientation) and out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if !g.insert(Edge::new(a, b)) {
                return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
            }
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
            adj: vec![vec![false; n]; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert(Edge(u, v));
            }
        }
        g
    }

    /// The cycle `0-1-…-(n-1)-0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::path(n);
        g.insert(Edge::new(0, n - 1));
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.insert(Edge(u - 1, u));
        }
        g
    }

    fn insert(&mut self, e: Edge) -> bool {
        if !self.edges.insert(e) {
            return false;
        }
        self.adj[e.0][e.1] = true;
        self.adj[e.1][e.0] = true;
        true
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in sorted order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    /// Position of `e` in the sorted edge list.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        if !self.contains_edge(e) {
            return None;
        }
        Some(self.edges.range(..e).count())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u][v]
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.0, e.1)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v]
            .iter()
            .enumerate()
            .filter_map(|(u, &a)| a.then_some(u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&a| a).count()
    }

    /// Degrees sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == k)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adj[u][v] {
                    g.insert(Edge(u, v));
                }
            }
        }
        g
    }

    /// Neighbourhood bitmasks, available for graphs on at most 64 vertices.
    pub fn neighbor_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            (0..self.n)
                .map(|v| self.neighbors(v).fold(0u64, |m, u| m | (1 << u)))
                .collect(),
        )
    }

    /// `true` when no two vertices of `set` are adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().all(|&v| v < self.n)
            && set
                .iter()
                .enumerate()
                .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.adj[u][v]))
    }

    /// The subgraph induced on `vertices`, relabelled so that `vertices[i]`
    /// becomes vertex `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<InducedSubgraph, GraphError> {
        let mut seen = vec![false; self.n];
        for &v in vertices {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(GraphError::DuplicateVertex(v));
            }
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.adj[a][b] {
                    g.insert(Edge(i, j));
                }
            }
        }
        Ok(InducedSubgraph {
            graph: g,
            vertices: vertices.to_vec(),
        })
    }

    /// Removes `v` and relabels the remaining vertices contiguously,
    /// preserving their relative order.
    pub fn delete_vertex(&self, v: usize) -> Result<VertexDeletion, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let kept: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        let sub = self.induced_subgraph(&kept)?;
        let mut old_to_new = vec![None; self.n];
        for (new, &old) in kept.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        Ok(VertexDeletion {
            graph: sub.graph,
            old_to_new,
            new_to_old: kept,
        })
    }

    pub fn delete_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        if !self.contains_edge(e) {
            return Err(GraphError::NotAnEdge(e.0, e.1));
        }
        let mut g = self.clone();
        g.edges.remove(&e);
        g.adj[e.0][e.1] = false;
        g.adj[e.1][e.0] = false;
        Ok(g)
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: p, n: self.n });
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::DuplicateVertex(p));
            }
        }
        if perm.len() != self.n {
            return Err(GraphError::VertexOutOfRange { vertex: perm.len(), n: self.n });
        }
        Graph::new(self.n, self.edges().map(|e| (perm[e.0], perm[e.1])))
    }

    /// All triangles, each once, in lexicographic order.
    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        for e in &self.edges {
            for w in e.1 + 1..self.n {
                if self.adj[e.0][w] && self.adj[e.1][w] {
                    out.push(Triangle([e.0, e.1, w]));
                }
            }
        }
        out
    }
}

/// Result of [`Graph::induced_subgraph`]: the subgraph plus the host vertex
/// behind each of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub vertices: Vec<usize>,
}

impl InducedSubgraph {
    /// Host edge corresponding to a subgraph edge.
    pub fn host_edge(&self, e: Edge) -> Edge {
        Edge::new(self.vertices[e.0], self.vertices[e.1])
    }
}

/// Result of [`Graph::delete_vertex`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDeletion {
    pub graph: Graph,
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(3, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(
            Graph::new(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn induced_subgraph_of_paley17() {
        let p = paley(17).unwrap();
        let k3 = p.induced_subgraph(&[0, 1, 2]).unwrap().graph;
        assert_eq!(k3, Graph::complete(3));

        let sub = p.induced_subgraph(&[0, 1, 2, 3, 6, 12, 13]).unwrap().graph;
        assert_eq!(sub.edge_count(), 9);
        assert_eq!(sub.degree_sequence(), vec![1, 2, 2, 3, 3, 3, 4]);

        assert_eq!(p.induced_subgraph(&[]).unwrap().graph, Graph::empty(0));
        assert_eq!(
            p.induced_subgraph(&[0, 17]),
            Err(GraphError::VertexOutOfRange { vertex: 17, n: 17 })
        );
    }

    #[test]
    fn deletions() {
        let p = paley(17).unwrap();
        let d = p.delete_vertex(0).unwrap();
        assert_eq!(d.graph.order(), 16);
        assert_eq!(d.graph.edge_count(), 60);
        assert_eq!(d.old_to_new[0], None);
        assert_eq!(d.old_to_new[5], Some(4));
        assert_eq!(d.new_to_old[4], 5);
        assert!(p.delete_vertex(17).is_err());

        let k2 = Graph::complete(2).delete_edge(Edge::new(0, 1)).unwrap();
        assert_eq!(k2, Graph::empty(2));
        assert_eq!(
            Graph::empty(2).delete_edge(Edge::new(0, 1)),
            Err(GraphError::NotAnEdge(0, 1))
        );
    }

    #[test]
    fn triangle_counts() {
        let p = paley(17).unwrap();
        assert_eq!(p.triangles().len(), 68);
        assert_eq!(p.delete_vertex(0).unwrap().graph.triangles().len(), 56);
        assert!(Graph::cycle(5).triangles().is_empty());
    }

    #[test]
    fn edge_index_follows_sorted_order() {
        let g = Graph::cycle(4);
        let idx: Vec<_> = g.edges().map(|e| g.edge_index(e).unwrap()).collect();
        assert_eq!(idx, vec![0, 1, 2, 3]);
        assert_eq!(g.edge_index(Edge::new(0, 2)), None);
    }
}
