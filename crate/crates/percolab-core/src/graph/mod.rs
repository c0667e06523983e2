//! Simple undirected graphs with a canonical edge order.
//!
//! Vertices are `0..n`. Edges are stored as `(u, v)` with `u < v`, sorted
//! lexicographically; that order is the canonical one used by the text
//! format, by edge-arrival processes, and by percolation sampling, so a
//! graph and its serialized form agree about which edge is "edge i".

mod construction;
mod generate;
mod io;

pub use construction::{
    tightness_construction, validate_tightness, ConstructionSpec, TightnessGraph,
};
pub use generate::{
    cartesian_product, complete, cycle, generate, hypercube, random_regular, GeneratorSpec,
    PRODUCT_VERTEX_CAP,
};
pub use io::{read_graph, read_graph_file, write_graph, write_graph_file};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub type Vertex = u32;

/// Undirected simple graph in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    degree_uniform: Option<u32>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Graph {{ n: {}, m: {}, regular: {:?} }}",
            self.n,
            self.edges.len(),
            self.degree_uniform
        )
    }
}

impl Graph {
    /// Builds a graph from an edge list. Endpoint order within a pair does
    /// not matter; the list is normalized and sorted. Rejects self-loops,
    /// duplicate edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut norm: Vec<(Vertex, Vertex)> = Vec::new();
        for (a, b) in edges {
            if a as usize >= n {
                return Err(Error::VertexOutOfRange { vertex: a, n });
            }
            if b as usize >= n {
                return Err(Error::VertexOutOfRange { vertex: b, n });
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let degree_uniform = detect_uniform_degree(&adj);
        Ok(Graph {
            n,
            edges: norm,
            adj,
            degree_uniform,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order: `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Neighbors of `u` in increasing order.
    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.adj[u as usize]
    }

    pub fn degree(&self, u: Vertex) -> u32 {
        self.adj[u as usize].len() as u32
    }

    /// `Some(d)` when every vertex has degree exactly `d`.
    pub fn degree_uniform(&self) -> Option<u32> {
        self.degree_uniform
    }

    pub fn is_regular(&self) -> bool {
        self.degree_uniform.is_some()
    }

    pub fn min_degree(&self) -> u32 {
        self.adj.iter().map(|l| l.len() as u32).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Position of `{u, v}` in the canonical edge order.
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Number of edges with exactly one endpoint in `set`.
    pub fn edge_boundary(&self, set: &VertexSet) -> Result<usize> {
        if let Some(&max) = set.ids().last() {
            self.check_vertex(max)?;
        }
        let mut inside = vec![false; self.n];
        for &v in set.ids() {
            inside[v as usize] = true;
        }
        let mut count = 0usize;
        for &v in set.ids() {
            for &w in self.neighbors(v) {
                if !inside[w as usize] {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// BFS distance between two vertices; `None` when they are in
    /// different components.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<Option<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Ok(Some(0));
        }
        let mut dist = vec![usize::MAX; self.n];
        dist[u as usize] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x as usize];
            for &y in self.neighbors(x) {
                if dist[y as usize] == usize::MAX {
                    dist[y as usize] = dx + 1;
                    if y == v {
                        return Ok(Some(dx + 1));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(None)
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::new();
        seen[0] = true;
        queue.push_back(0u32);
        let mut count = 1usize;
        while let Some(x) = queue.pop_front() {
            for &y in self.neighbors(x) {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == self.n
    }

    /// Detects the canonical hypercube encoding: `n = 2^dim` and `u ~ v`
    /// exactly when `u XOR v` has a single set bit. Returns the dimension.
    pub fn is_canonical_hypercube(&self) -> Option<u32> {
        if self.n == 0 || !self.n.is_power_of_two() {
            return None;
        }
        let dim = self.n.trailing_zeros();
        if self.degree_uniform != Some(dim) {
            return None;
        }
        if self.m() != dim as usize * self.n / 2 {
            return None;
        }
        for &(u, v) in &self.edges {
            if (u ^ v).count_ones() != 1 {
                return None;
            }
        }
        Some(dim)
    }
}

fn detect_uniform_degree(adj: &[Vec<Vertex>]) -> Option<u32> {
    let first = adj.first()?.len();
    if adj.iter().all(|l| l.len() == first) {
        Some(first as u32)
    } else {
        None
    }
}

/// Sorted set of distinct vertices, validated against a host graph size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet {
    ids: Vec<Vertex>,
}

impl VertexSet {
    pub fn new(mut ids: Vec<Vertex>, n: usize) -> Result<Self> {
        ids.sort_unstable();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidParameter(format!(
                    "repeated vertex {} in vertex set",
                    w[0]
                )));
            }
        }
        if let Some(&max) = ids.last() {
            if max as usize >= n {
                return Err(Error::VertexOutOfRange { vertex: max, n });
            }
        }
        Ok(VertexSet { ids })
    }

    pub fn ids(&self) -> &[Vertex] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.ids.binary_search(&v).is_ok()
    }
}
