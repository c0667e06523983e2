//! Combinatorial checks evaluated on a single percolation sample.
//!
//! Three verifiers inspect how a sampled subgraph sits inside its host:
//! [`core_structure_check`] asks for a k-connected core whose outsiders
//! are few, low-degree, and spread out; [`low_degree_distance_check`]
//! asks that low-degree vertices are never host-adjacent; and
//! [`component_gap_check`] asks that, after deleting a small vertex
//! set, no component has a size inside a forbidden middle band. The
//! submodules add exact rooted-tree counts and matching statistics
//! under independent edge retention.

mod matching;
mod trees;

pub use matching::{matching_percolation_stats, max_matching, MatchingStats, QuantileSummary};
pub use trees::{count_rooted_trees, TreeCount};

use crate::graph::{Graph, Vertex, VertexSet};
use crate::process::{is_k_connected_edges, sample_degrees, PercolationSample, UnionFind};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Why a [`CoreVerdict`] failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreFailure {
    /// Every vertex had sampled degree below `k`.
    NoCore,
    /// The sampled core split into two or more components of order >= 2.
    MultipleBigComponents,
    /// The sampled core held together but is not k-connected.
    CoreNotKConnected,
    /// An outsider reached sampled degree `k`. Defensive: unreachable
    /// when the verdict comes from [`core_structure_check`], which
    /// defines outsiders by low sampled degree.
    OutsiderDegree,
    /// Two outsiders are adjacent in the host.
    OutsiderDistance,
}

/// Outcome of [`core_structure_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoreVerdict {
    pub pass: bool,
    /// Vertices of sampled degree >= k (the candidate core).
    pub core: VertexSet,
    /// Vertices of sampled degree <= k-1.
    pub outsiders: VertexSet,
    /// Largest sampled degree among outsiders; `None` when there are none.
    pub max_outsider_degree: Option<u32>,
    /// Smallest host distance between two outsiders; `None` when there
    /// are fewer than two, or when no pair is connected in the host.
    pub min_pairwise_outsider_distance: Option<usize>,
    /// First failed condition, in check order; `None` on pass.
    pub failure: Option<CoreFailure>,
}

/// Checks that the sample decomposes into one k-connected core plus
/// scattered low-degree outsiders.
///
/// Writing `deg_S(v)` for the degree of `v` in the sampled subgraph,
/// the outsiders are `S = {v : deg_S(v) <= k-1}` and the candidate core
/// is the rest. The verdict passes iff the core is nonempty, the
/// sampled subgraph induced on the core is k-connected, and no two
/// outsiders are host-adjacent (host distance >= 2). Outsider degrees
/// are low by construction, and an outsider's sampled neighbors always
/// lie in the core whenever the distance condition holds.
///
/// # Panics
/// If `k == 0` or the sample was drawn from a different host.
pub fn core_structure_check(g: &Graph, sample: &PercolationSample, k: u32) -> CoreVerdict {
    assert!(k >= 1, "core check needs k >= 1");
    let deg = sample_degrees(g, sample);
    let mut core_ids = Vec::new();
    let mut outsider_ids = Vec::new();
    for v in 0..g.n() as Vertex {
        if deg[v as usize] >= k {
            core_ids.push(v);
        } else {
            outsider_ids.push(v);
        }
    }
    let core = VertexSet::new(core_ids, g.n()).expect("core ids are in range");
    let outsiders = VertexSet::new(outsider_ids, g.n()).expect("outsider ids are in range");
    let max_outsider_degree = outsiders.ids().iter().map(|&v| deg[v as usize]).max();
    let min_pairwise_outsider_distance = min_pairwise_distance(g, outsiders.ids());

    let failure = if core.is_empty() {
        Some(CoreFailure::NoCore)
    } else if let Some(reason) = induced_core_failure(g, sample, &core, k) {
        Some(reason)
    } else if min_pairwise_outsider_distance.is_some_and(|d| d < 2) {
        Some(CoreFailure::OutsiderDistance)
    } else {
        None
    };

    CoreVerdict {
        pass: failure.is_none(),
        core,
        outsiders,
        max_outsider_degree,
        min_pairwise_outsider_distance,
        failure,
    }
}

/// Tests the sampled subgraph induced on `core` for k-connectivity and
/// classifies a failure as "several big components" or "one piece that
/// is not k-connected".
fn induced_core_failure(
    g: &Graph,
    sample: &PercolationSample,
    core: &VertexSet,
    k: u32,
) -> Option<CoreFailure> {
    const UNMAPPED: u32 = u32::MAX;
    let mut index = vec![UNMAPPED; g.n()];
    for (i, &v) in core.ids().iter().enumerate() {
        index[v as usize] = i as u32;
    }
    let mut edges = Vec::new();
    for e in sample.present_edges() {
        let (u, v) = g.edges()[e];
        let (iu, iv) = (index[u as usize], index[v as usize]);
        if iu != UNMAPPED && iv != UNMAPPED {
            edges.push((iu, iv));
        }
    }
    if is_k_connected_edges(core.len(), &edges, k) {
        return None;
    }
    let mut uf = UnionFind::new(core.len());
    for &(u, v) in &edges {
        uf.union(u, v);
    }
    let mut size = vec![0usize; core.len()];
    for v in 0..core.len() as u32 {
        size[uf.find(v) as usize] += 1;
    }
    let big_components = size.iter().filter(|&&s| s >= 2).count();
    if big_components >= 2 {
        Some(CoreFailure::MultipleBigComponents)
    } else {
        Some(CoreFailure::CoreNotKConnected)
    }
}

/// Smallest host distance over pairs of `sources`; `None` when fewer
/// than two sources or no pair is connected. Runs one early-exiting BFS
/// per source.
fn min_pairwise_distance(g: &Graph, sources: &[Vertex]) -> Option<usize> {
    if sources.len() < 2 {
        return None;
    }
    let mut is_source = vec![false; g.n()];
    for &s in sources {
        is_source[s as usize] = true;
    }
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = std::collections::VecDeque::new();
    for &s in sources {
        dist.fill(usize::MAX);
        queue.clear();
        dist[s as usize] = 0;
        queue.push_back(s);
        'bfs: while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            if best.is_some_and(|b| du + 1 >= b) {
                break 'bfs; // no shorter pair can be found from here
            }
            for &w in g.neighbors(u) {
                if dist[w as usize] != usize::MAX {
                    continue;
                }
                if is_source[w as usize] && w != s {
                    best = Some(du + 1);
                    break 'bfs;
                }
                dist[w as usize] = du + 1;
                queue.push_back(w);
            }
        }
        if best == Some(1) {
            break; // cannot improve on adjacency
        }
    }
    best
}

/// Outcome of [`low_degree_distance_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceVerdict {
    pub pass: bool,
    /// Vertices of sampled degree < k.
    pub low_degree: VertexSet,
    /// Lexicographically first host-adjacent pair of low-degree
    /// vertices; `None` on pass.
    pub offending_pair: Option<(Vertex, Vertex)>,
}

/// Checks that no two vertices of sampled degree below `k` are adjacent
/// in the host.
///
/// # Panics
/// If `k == 0` or the sample was drawn from a different host.
pub fn low_degree_distance_check(g: &Graph, sample: &PercolationSample, k: u32) -> DistanceVerdict {
    assert!(k >= 1, "distance check needs k >= 1");
    let deg = sample_degrees(g, sample);
    let low: Vec<Vertex> = (0..g.n() as Vertex).filter(|&v| deg[v as usize] < k).collect();
    let mut is_low = vec![false; g.n()];
    for &v in &low {
        is_low[v as usize] = true;
    }
    let mut offending_pair = None;
    'scan: for &v in &low {
        for &w in g.neighbors(v) {
            if w > v && is_low[w as usize] {
                offending_pair = Some((v, w));
                break 'scan;
            }
        }
    }
    DistanceVerdict {
        pass: offending_pair.is_none(),
        low_degree: VertexSet::new(low, g.n()).expect("ids are in range"),
        offending_pair,
    }
}

/// Outcome of [`component_gap_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    /// Vertex set deleted before measuring components.
    pub removed: VertexSet,
    /// Upper end of the forbidden size band `[2, C * d * ln n]`.
    pub size_bound: f64,
    /// Component size -> number of components of that size, over the
    /// sampled subgraph minus the removed set. Totals `n - |removed|`.
    pub component_size_histogram: BTreeMap<usize, usize>,
    /// Components whose size falls inside the forbidden band, ascending
    /// by their smallest vertex.
    pub violations: Vec<VertexSet>,
}

impl GapReport {
    /// True when no component size falls in the forbidden band.
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Deletes `removed` from the sampled subgraph and flags any component
/// whose size lies in `[2, big_c * d * ln n]`. Singletons are exempt;
/// `d` is the host degree (maximum degree on an irregular host).
///
/// # Panics
/// If `big_c <= 0`, a removed id is out of range, or the sample was
/// drawn from a different host.
pub fn component_gap_check(
    g: &Graph,
    sample: &PercolationSample,
    removed: &VertexSet,
    big_c: f64,
) -> GapReport {
    assert!(big_c > 0.0, "band constant must be positive");
    let d = g.degree_uniform().unwrap_or_else(|| (0..g.n() as Vertex).map(|v| g.degree(v)).max().unwrap_or(0));
    let size_bound = big_c * f64::from(d) * (g.n() as f64).ln();

    let mut alive = vec![true; g.n()];
    for &v in removed.ids() {
        assert!((v as usize) < g.n(), "removed vertex out of range");
        alive[v as usize] = false;
    }
    let mut uf = UnionFind::new(g.n());
    for e in sample.present_edges() {
        let (u, v) = g.edges()[e];
        if alive[u as usize] && alive[v as usize] {
            uf.union(u, v);
        }
    }
    let mut members: BTreeMap<u32, Vec<Vertex>> = BTreeMap::new();
    for v in 0..g.n() as Vertex {
        if alive[v as usize] {
            members.entry(uf.find(v)).or_default().push(v);
        }
    }
    let mut component_size_histogram = BTreeMap::new();
    let mut violations = Vec::new();
    for comp in members.into_values() {
        *component_size_histogram.entry(comp.len()).or_insert(0) += 1;
        if comp.len() >= 2 && (comp.len() as f64) <= size_bound {
            violations.push(VertexSet::new(comp, g.n()).expect("ids are in range"));
        }
    }
    violations.sort_by_key(|set| set.ids()[0]);
    GapReport { removed: removed.clone(), size_bound, component_size_histogram, violations }
}
