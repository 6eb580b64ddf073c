//! Finite multigraphs with stable edge identities.
//!
//! Vertices are the dense range `0..n`. Edges carry an [`EdgeId`] that survives
//! edge deletion, so subgraphs produced by [`Graph::without_edge`] can be related
//! back to their parent. Loops are rejected; parallel edges are allowed, although
//! most of the structural machinery (planarity, detectors, canonical forms)
//! only accepts simple graphs and says so.

mod blocks;
pub mod canon;
mod cycles;
mod generate;
pub mod graph6;
mod minor;
pub mod named;
mod ops;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use blocks::{blocks, blocks_all_complete_or_cycle, BlockDecomposition};
pub use cycles::{
    cycle_spectrum, enumerate_cycles, find_2_alternating_cycle, find_alternating_cycles, AlternationPattern,
};
pub use generate::{generate_connected_graphs, generate_connected_graphs_up_to, GENERATION_CAP};
pub use minor::{has_minor, MinorName, MINOR_VERTEX_CAP};
pub use ops::{
    chromatic_index, degeneracy_order, line_graph, min_degree_sum_edge, DegeneracyOrder, CHROMATIC_INDEX_EDGE_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0} is not allowed")]
    Loop(usize),
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not simple")]
    NotSimple,
    #[error("instance too large: {what} is {actual}, cap is {cap}")]
    TooLarge {
        what: &'static str,
        actual: usize,
        cap: usize,
    },
}

/// Stable edge identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An edge with endpoints stored in canonical orientation `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// The endpoint opposite to `x`. `x` must be an endpoint.
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            debug_assert_eq!(x, self.v);
            self.u
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    // (neighbor, position of the edge in `edges`)
    adj: Vec<Vec<(usize, usize)>>,
    next_id: u32,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &pairs)
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            next_id: 0,
        }
    }

    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in pairs {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds an edge and returns its id. Parallel edges are permitted.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<EdgeId, GraphError> {
        for x in [a, b] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if a == b {
            return Err(GraphError::Loop(a));
        }
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        let id = EdgeId(self.next_id);
        self.next_id += 1;
        let pos = self.edges.len();
        self.edges.push(Edge { id, u, v });
        self.adj[u].push((v, pos));
        self.adj[v].push((u, pos));
        Ok(id)
    }

    /// Adds an isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Position of an edge id in [`Graph::edges`].
    pub fn edge_position(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edge_position(id).map(|p| &self.edges[p])
    }

    /// Incident `(neighbor, edge position)` pairs, one per edge incidence.
    pub fn incidences(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Distinct neighbors of `v`, sorted.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.adj[v].iter().map(|&(w, _)| w).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].iter().any(|&(w, _)| w == v)
    }

    /// Number of edges joining `u` and `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.adj[u].iter().filter(|&&(w, _)| w == v).count()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|e| seen.insert((e.u, e.v)))
    }

    pub fn require_simple(&self) -> Result<(), GraphError> {
        if self.is_simple() {
            Ok(())
        } else {
            Err(GraphError::NotSimple)
        }
    }

    /// Copy of the graph with one edge removed; all other edge ids are preserved.
    pub fn without_edge(&self, id: EdgeId) -> Result<Graph, GraphError> {
        let pos = self.edge_position(id).ok_or(GraphError::UnknownEdge(id))?;
        let mut g = Graph::new(self.n);
        g.next_id = self.next_id;
        for (i, e) in self.edges.iter().enumerate() {
            if i != pos {
                g.push_edge_with_id(*e);
            }
        }
        Ok(g)
    }

    fn push_edge_with_id(&mut self, e: Edge) {
        let pos = self.edges.len();
        self.edges.push(e);
        self.adj[e.u].push((e.v, pos));
        self.adj[e.v].push((e.u, pos));
        self.next_id = self.next_id.max(e.id.0 + 1);
    }

    /// Subgraph induced by `keep` (relabelled in the given order) together with
    /// the original position of every kept edge.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(keep.len());
        let mut origin = Vec::new();
        for (pos, e) in self.edges.iter().enumerate() {
            let (a, b) = (index[e.u], index[e.v]);
            if a != usize::MAX && b != usize::MAX {
                g.add_edge(a, b).expect("induced edge endpoints are valid");
                origin.push(pos);
            }
        }
        (g, origin)
    }

    /// The graph with every parallel class collapsed to one edge.
    pub fn simplified(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for e in &self.edges {
            if !g.has_edge(e.u, e.v) {
                g.add_edge(e.u, e.v).expect("valid");
            }
        }
        g
    }

    /// Component index for every vertex, numbered in order of smallest vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |c| c + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// `|E| - |V| + components`.
    pub fn cycle_rank(&self) -> usize {
        self.m() + self.component_count() - self.n
    }

    /// Breadth-first spanning forest. Returns the visiting order and, for each
    /// vertex, the position of its parent edge (`None` for component roots).
    /// Roots are the smallest vertex of each component; neighbors are scanned
    /// in edge insertion order.
    pub fn bfs_forest(&self) -> (Vec<usize>, Vec<Option<usize>>) {
        let mut parent = vec![None; self.n];
        let mut seen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                order.push(x);
                for &(y, pos) in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = Some(pos);
                        queue.push_back(y);
                    }
                }
            }
        }
        (order, parent)
    }

    /// Neighborhood bitmasks; only meaningful for `n <= 64`.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "adjacency masks need n <= 64");
        let mut masks = vec![0u64; self.n];
        for e in &self.edges {
            masks[e.u] |= 1 << e.v;
            masks[e.v] |= 1 << e.u;
        }
        masks
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n + other.n);
        for e in &self.edges {
            g.add_edge(e.u, e.v).expect("valid");
        }
        for e in &other.edges {
            g.add_edge(e.u + self.n, e.v + self.n).expect("valid");
        }
        g
    }
}

/// A located occurrence of a named configuration in a host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationMatch {
    pub config: String,
    /// `vertex_map[i]` is the host vertex playing pattern vertex `i`.
    pub vertex_map: Vec<usize>,
    /// Host faces (indices into the host's face list) for the pattern faces, if any.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub face_map: Vec<usize>,
}
