//! Maximum matchings in general graphs and matching-size statistics
//! under independent edge retention.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rng::{split_seed, stream};
use crate::stats::quantile_nearest_rank;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

const NONE: u32 = u32::MAX;

/// Computes a maximum-cardinality matching of the graph spanned by
/// `edges`, as canonical `(min, max)` pairs sorted ascending.
///
/// Augmenting-path search with blossom contraction, so the result is
/// exact on general (non-bipartite) graphs. Self-loops and duplicate
/// edges are ignored. Runs in O(V³).
pub fn max_matching(edges: &[(Vertex, Vertex)]) -> Vec<(Vertex, Vertex)> {
    let mut list: Vec<(Vertex, Vertex)> = edges
        .iter()
        .filter(|&&(a, b)| a != b)
        .map(|&(a, b)| if a < b { (a, b) } else { (b, a) })
        .collect();
    list.sort_unstable();
    list.dedup();
    if list.is_empty() {
        return Vec::new();
    }
    let n = list.iter().map(|&(_, b)| b).max().expect("nonempty") as usize + 1;
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &list {
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    let mut state = Blossom {
        adj: &adj,
        matched: vec![NONE; n],
        parent: vec![NONE; n],
        base: Vec::new(),
    };
    for v in 0..n as u32 {
        if state.matched[v as usize] == NONE {
            if let Some(free_end) = state.find_augmenting_path(v) {
                state.augment(free_end);
            }
        }
    }
    let mut out = Vec::new();
    for v in 0..n as u32 {
        let w = state.matched[v as usize];
        if w != NONE && v < w {
            out.push((v, w));
        }
    }
    out
}

struct Blossom<'a> {
    adj: &'a [Vec<Vertex>],
    /// Partner of each vertex, `NONE` when free.
    matched: Vec<u32>,
    /// Tree parent along the alternating search tree.
    parent: Vec<u32>,
    /// Representative of each vertex's contracted blossom.
    base: Vec<u32>,
}

impl Blossom<'_> {
    /// Grows an alternating tree from the free vertex `start`;
    /// contracts any odd cycle met along the way. Returns the free
    /// vertex closing an augmenting path, if one exists.
    fn find_augmenting_path(&mut self, start: u32) -> Option<u32> {
        let n = self.adj.len();
        self.parent.fill(NONE);
        self.base = (0..n as u32).collect();
        let mut in_tree = vec![false; n];
        let mut queue = VecDeque::new();
        in_tree[start as usize] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &to in &self.adj[v as usize] {
                if self.base[v as usize] == self.base[to as usize]
                    || self.matched[v as usize] == to
                {
                    continue;
                }
                let to_even = to == start
                    || (self.matched[to as usize] != NONE
                        && self.parent[self.matched[to as usize] as usize] != NONE);
                if to_even {
                    // Both endpoints sit at even depth: odd cycle.
                    let b = self.lowest_common_base(v, to);
                    let mut in_blossom = vec![false; n];
                    self.mark_path(v, b, to, &mut in_blossom);
                    self.mark_path(to, b, v, &mut in_blossom);
                    for i in 0..n {
                        if in_blossom[self.base[i] as usize] {
                            self.base[i] = b;
                            if !in_tree[i] {
                                in_tree[i] = true;
                                queue.push_back(i as u32);
                            }
                        }
                    }
                } else if self.parent[to as usize] == NONE {
                    self.parent[to as usize] = v;
                    if self.matched[to as usize] == NONE {
                        return Some(to);
                    }
                    let partner = self.matched[to as usize];
                    in_tree[partner as usize] = true;
                    queue.push_back(partner);
                }
            }
        }
        None
    }

    /// Base of the first common blossom on the two tree paths.
    fn lowest_common_base(&self, mut v: u32, mut w: u32) -> u32 {
        let mut on_path = vec![false; self.adj.len()];
        loop {
            v = self.base[v as usize];
            on_path[v as usize] = true;
            if self.matched[v as usize] == NONE {
                break;
            }
            v = self.parent[self.matched[v as usize] as usize];
        }
        loop {
            w = self.base[w as usize];
            if on_path[w as usize] {
                return w;
            }
            w = self.parent[self.matched[w as usize] as usize];
        }
    }

    /// Rethreads parents along the odd cycle from `v` down to base `b`
    /// so both cycle arms can later carry an augmenting path, and marks
    /// the bases being swallowed by the new blossom.
    fn mark_path(&mut self, mut v: u32, b: u32, mut child: u32, in_blossom: &mut [bool]) {
        while self.base[v as usize] != b {
            let partner = self.matched[v as usize];
            in_blossom[self.base[v as usize] as usize] = true;
            in_blossom[self.base[partner as usize] as usize] = true;
            self.parent[v as usize] = child;
            child = partner;
            v = self.parent[partner as usize];
        }
    }

    /// Flips matched/unmatched status along the tree path ending at the
    /// free vertex `v`.
    fn augment(&mut self, mut v: u32) {
        while v != NONE {
            let pv = self.parent[v as usize];
            let next = self.matched[pv as usize];
            self.matched[v as usize] = pv;
            self.matched[pv as usize] = v;
            v = next;
        }
    }
}

/// Six-point nearest-rank summary of an integer sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantileSummary {
    pub q01: usize,
    pub q05: usize,
    pub q25: usize,
    pub q50: usize,
    pub q75: usize,
    pub q95: usize,
}

impl QuantileSummary {
    pub fn from_sorted(sorted: &[usize]) -> Self {
        QuantileSummary {
            q01: quantile_nearest_rank(sorted, 0.01),
            q05: quantile_nearest_rank(sorted, 0.05),
            q25: quantile_nearest_rank(sorted, 0.25),
            q50: quantile_nearest_rank(sorted, 0.50),
            q75: quantile_nearest_rank(sorted, 0.75),
            q95: quantile_nearest_rank(sorted, 0.95),
        }
    }
}

/// Distribution of maximum-matching sizes of a randomly retained edge
/// set, produced by [`matching_percolation_stats`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchingStats {
    /// Number of candidate edges.
    pub s: usize,
    /// Retention probability `delta1 / d`.
    pub q: f64,
    pub trials: usize,
    /// Maximum-matching size per trial, in trial order.
    pub matching_size_samples: Vec<usize>,
    pub empirical_mean: f64,
    pub empirical_quantiles: QuantileSummary,
    /// `d * (1st-percentile matching size) / s`: the guaranteed-rate
    /// constant this sample supports.
    pub delta2_candidate: f64,
}

/// Retains each edge of `f_edges` (canonical edge indices into `g`)
/// independently with probability `delta1 / d` and records the maximum
/// matching size of what survives, once per trial.
///
/// Trial `i` draws from the stream seeded by `split_seed(seed, i)`,
/// consuming one draw per candidate edge in ascending canonical order,
/// so results are reproducible edge for edge.
pub fn matching_percolation_stats(
    g: &Graph,
    f_edges: &[usize],
    delta1: f64,
    trials: usize,
    seed: u64,
) -> Result<MatchingStats> {
    let d = g.degree_uniform().ok_or(Error::NotRegular)?;
    if d == 0 {
        return Err(Error::InvalidParameter("host has no edges".into()));
    }
    let mut f_sorted = f_edges.to_vec();
    f_sorted.sort_unstable();
    f_sorted.dedup();
    if f_sorted.len() != f_edges.len() {
        return Err(Error::InvalidParameter("duplicate edge index in candidate set".into()));
    }
    if f_sorted.is_empty() {
        return Err(Error::InvalidParameter("candidate edge set is empty".into()));
    }
    if let Some(&bad) = f_sorted.last().filter(|&&e| e >= g.m()) {
        return Err(Error::InvalidParameter(format!(
            "edge index {bad} out of range for a host with {} edges",
            g.m()
        )));
    }
    if !(0.0..=f64::from(d)).contains(&delta1) {
        return Err(Error::InvalidParameter(format!(
            "delta1 must lie in [0, d] = [0, {d}], got {delta1}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    let s = f_sorted.len();
    let q = delta1 / f64::from(d);

    let mut samples = Vec::with_capacity(trials);
    let mut kept = Vec::with_capacity(s);
    for trial in 0..trials {
        let mut rng = stream(split_seed(seed, trial as u64));
        kept.clear();
        for &e in &f_sorted {
            if rng.random::<f64>() < q {
                kept.push(g.edges()[e]);
            }
        }
        samples.push(max_matching(&kept).len());
    }

    let mut sorted = samples.clone();
    sorted.sort_unstable();
    let empirical_mean = samples.iter().sum::<usize>() as f64 / trials as f64;
    let empirical_quantiles = QuantileSummary::from_sorted(&sorted);
    let delta2_candidate = f64::from(d) * empirical_quantiles.q01 as f64 / s as f64;
    Ok(MatchingStats {
        s,
        q,
        trials,
        matching_size_samples: samples,
        empirical_mean,
        empirical_quantiles,
        delta2_candidate,
    })
}
