//! Percolation samples and edge-arrival processes.
//!
//! Both randomizations act on the canonical edge order of a host graph:
//! percolation keeps each edge independently with probability `p`, and a
//! process trace is a uniform random permutation of the edges. Draws
//! consume one RNG value per edge in canonical order, so a sample is
//! pinned by `(graph, p, seed)` alone.

mod connectivity;
mod hitting;

pub use connectivity::{is_k_connected, is_k_connected_edges, vertex_connectivity_small, UnionFind};
pub use hitting::{
    connectivity_hitting_time, for_each_permutation, k_connectivity_hitting_time,
    min_degree_hitting_time,
};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rng::{split_seed, stream};
use rand::Rng;

/// Outcome of keeping each host edge independently.
#[derive(Clone, Debug, PartialEq)]
pub struct PercolationSample {
    /// Retention probability that generated the sample (effective
    /// probability for unions).
    pub p: f64,
    pub seed: u64,
    mask: Vec<bool>,
    retained: usize,
}

impl PercolationSample {
    /// Wraps an explicit retention mask, for callers that need a
    /// handcrafted subgraph rather than a random draw.
    pub fn from_mask(p: f64, seed: u64, mask: Vec<bool>) -> PercolationSample {
        let retained = mask.iter().filter(|&&x| x).count();
        PercolationSample { p, seed, mask, retained }
    }

    pub fn m(&self) -> usize {
        self.mask.len()
    }

    pub fn retained_count(&self) -> usize {
        self.retained
    }

    /// Whether the canonical edge `idx` survived.
    pub fn is_present(&self, idx: usize) -> bool {
        self.mask[idx]
    }

    /// Canonical indices of the surviving edges, ascending.
    pub fn present_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    /// Surviving edges as endpoint pairs of the host.
    pub fn edge_list(&self, g: &Graph) -> Vec<(Vertex, Vertex)> {
        assert_eq!(g.m(), self.m(), "sample drawn from a different host");
        self.present_edges().map(|i| g.edges()[i]).collect()
    }

    /// Edge-wise union. The result is distributed like a single sample
    /// at the effective probability `1 - (1 - p_a)(1 - p_b)` when the
    /// parts are independent.
    pub fn union(a: &PercolationSample, b: &PercolationSample) -> Result<PercolationSample> {
        if a.m() != b.m() {
            return Err(Error::InvalidParameter(format!(
                "cannot union samples over {} and {} edges",
                a.m(),
                b.m()
            )));
        }
        let mask: Vec<bool> = a.mask.iter().zip(&b.mask).map(|(&x, &y)| x || y).collect();
        let retained = mask.iter().filter(|&&x| x).count();
        Ok(PercolationSample {
            p: 1.0 - (1.0 - a.p) * (1.0 - b.p),
            seed: a.seed,
            mask,
            retained,
        })
    }
}

fn check_probability(p: f64, name: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "{name} must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

/// Keeps each edge of `g` independently with probability `p`.
pub fn percolate(g: &Graph, p: f64, seed: u64) -> Result<PercolationSample> {
    check_probability(p, "retention probability")?;
    let mut rng = stream(seed);
    let mut mask = Vec::with_capacity(g.m());
    let mut retained = 0;
    for _ in 0..g.m() {
        let keep = rng.random::<f64>() < p;
        retained += keep as usize;
        mask.push(keep);
    }
    Ok(PercolationSample { p, seed, mask, retained })
}

/// Union of two independent samples at `p1` and `p2`, drawn from
/// sub-seeds 0 and 1 of `seed`.
pub fn union_sample(g: &Graph, p1: f64, p2: f64, seed: u64) -> Result<PercolationSample> {
    let a = percolate(g, p1, split_seed(seed, 0))?;
    let b = percolate(g, p2, split_seed(seed, 1))?;
    let mut u = PercolationSample::union(&a, &b)?;
    u.seed = seed;
    Ok(u)
}

/// Retention probability at which the expected number of vertices of
/// degree below the target settles around `phi`; explicitly,
/// `p = 1 - (phi / n)^(1/d)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinDegreeThreshold {
    pub p: f64,
    /// Expected retained degree `d * p`, handy for logging.
    pub dp: f64,
}

pub fn mindeg_threshold_p(n: usize, d: u32, phi: f64) -> Result<MinDegreeThreshold> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidParameter(format!(
            "threshold needs n >= 2 and d >= 1, got n = {n}, d = {d}"
        )));
    }
    if !(phi > 0.0 && phi <= n as f64) {
        return Err(Error::InvalidParameter(format!(
            "phi must lie in (0, n], got {phi}"
        )));
    }
    let p = 1.0 - (phi / n as f64).powf(1.0 / d as f64);
    Ok(MinDegreeThreshold { p, dp: d as f64 * p })
}

/// Retention probability solving `n ln(d) (1 - p)^d = 1`, the scale at
/// which the tightness construction loses a gadget but keeps minimum
/// degree.
pub fn construction_threshold_p(n: usize, d: u32) -> Result<f64> {
    if n < 2 || d < 2 {
        return Err(Error::InvalidParameter(format!(
            "threshold needs n >= 2 and d >= 2, got n = {n}, d = {d}"
        )));
    }
    let p = 1.0 - (n as f64 * (d as f64).ln()).powf(-1.0 / d as f64);
    Ok(p)
}

/// Splits `p` into two rounds with `p2 = 1/d`, so that taking the union
/// of independent samples at `p1` and `p2` reproduces a sample at `p`:
/// `(1 - p1)(1 - p2) = 1 - p`.
pub fn sprinkle_split(p: f64, d: u32) -> Result<(f64, f64)> {
    check_probability(p, "retention probability")?;
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "sprinkling needs d >= 2, got {d}"
        )));
    }
    let p2 = 1.0 / d as f64;
    if p < p2 {
        return Err(Error::InvalidParameter(format!(
            "cannot split p = {p} below the sprinkle round 1/d = {p2}"
        )));
    }
    let p1 = (p - p2) / (1.0 - p2);
    Ok((p1, p2))
}

/// Arrival order for an edge process: a permutation of the canonical
/// edge indices.
#[derive(Clone, Debug, PartialEq)]
pub struct ProcessTrace {
    pub seed: u64,
    order: Vec<u32>,
}

impl ProcessTrace {
    /// Wraps an explicit order after checking it permutes `0..m`.
    pub fn from_order(m: usize, order: Vec<u32>) -> Result<Self> {
        if order.len() != m {
            return Err(Error::InvalidParameter(format!(
                "order has {} entries for {m} edges",
                order.len()
            )));
        }
        let mut seen = vec![false; m];
        for &e in &order {
            if (e as usize) >= m || seen[e as usize] {
                return Err(Error::InvalidParameter(format!(
                    "order is not a permutation: entry {e}"
                )));
            }
            seen[e as usize] = true;
        }
        Ok(ProcessTrace { seed: 0, order })
    }

    /// `order()[t]` is the canonical index of the edge arriving at time
    /// `t + 1`.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn m(&self) -> usize {
        self.order.len()
    }

    /// Text form: header `m seed`, then one edge index per line.
    pub fn write_text(&self) -> String {
        let mut out = String::with_capacity(16 + self.order.len() * 7);
        out.push_str(&format!("{} {}\n", self.order.len(), self.seed));
        for &e in &self.order {
            out.push_str(&format!("{e}\n"));
        }
        out
    }

    /// Strict inverse of [`Self::write_text`].
    pub fn read_text(text: &str) -> Result<Self> {
        let fail = |line: usize, msg: String| Error::Format { line, msg };
        if !text.ends_with('\n') {
            return Err(fail(0, "missing trailing newline".into()));
        }
        let mut lines = text.split_inclusive('\n');
        let header = lines.next().ok_or_else(|| fail(1, "empty input".into()))?;
        let header = header.trim_end_matches('\n');
        let mut parts = header.split(' ');
        let (m_tok, seed_tok) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(fail(1, format!("expected 'm seed', got {header:?}"))),
        };
        let m: usize = parse_canonical(m_tok).ok_or_else(|| fail(1, format!("bad edge count {m_tok:?}")))?;
        let seed: u64 = parse_canonical(seed_tok).ok_or_else(|| fail(1, format!("bad seed {seed_tok:?}")))?;
        let mut order = Vec::with_capacity(m);
        for i in 0..m {
            let line = lines
                .next()
                .ok_or_else(|| fail(i + 2, "fewer entries than header promises".into()))?;
            let tok = line.trim_end_matches('\n');
            let e: u32 = parse_canonical(tok).ok_or_else(|| fail(i + 2, format!("bad index {tok:?}")))?;
            order.push(e);
        }
        if lines.next().is_some() {
            return Err(fail(m + 2, "trailing content".into()));
        }
        let mut trace = ProcessTrace::from_order(m, order)?;
        trace.seed = seed;
        Ok(trace)
    }
}

fn parse_canonical<T: std::str::FromStr + std::fmt::Display>(tok: &str) -> Option<T> {
    let val: T = tok.parse().ok()?;
    (val.to_string() == tok).then_some(val)
}

/// Uniform random arrival order for the edges of `g`.
///
/// The shuffle is spelled out (Fisher-Yates, high index down) so the
/// byte-level trace layout is pinned by this crate and not by a
/// dependency's shuffle internals.
pub fn process_permutation(g: &Graph, seed: u64) -> ProcessTrace {
    let mut rng = stream(seed);
    let mut order: Vec<u32> = (0..g.m() as u32).collect();
    for i in (1..order.len()).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    ProcessTrace { seed, order }
}

/// Degrees of every vertex in the subgraph a sample keeps.
pub fn sample_degrees(g: &Graph, sample: &PercolationSample) -> Vec<u32> {
    assert_eq!(g.m(), sample.m(), "sample drawn from a different host");
    let mut deg = vec![0u32; g.n()];
    for i in sample.present_edges() {
        let (u, v) = g.edges()[i];
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    deg
}

pub fn sample_min_degree(g: &Graph, sample: &PercolationSample) -> u32 {
    sample_degrees(g, sample).into_iter().min().unwrap_or(0)
}

pub fn sample_isolated_count(g: &Graph, sample: &PercolationSample) -> usize {
    sample_degrees(g, sample).into_iter().filter(|&d| d == 0).count()
}

/// Number of connected components of the sampled subgraph, isolated
/// vertices included.
pub fn sample_components(g: &Graph, sample: &PercolationSample) -> usize {
    let mut uf = UnionFind::new(g.n());
    for i in sample.present_edges() {
        let (u, v) = g.edges()[i];
        uf.union(u, v);
    }
    uf.components()
}

/// Whether the sampled subgraph spans all of `g` in one component.
pub fn sample_connected(g: &Graph, sample: &PercolationSample) -> bool {
    g.n() <= 1 || sample_components(g, sample) == 1
}

pub fn sample_is_k_connected(g: &Graph, sample: &PercolationSample, k: u32) -> bool {
    is_k_connected_edges(g.n(), &sample.edge_list(g), k)
}
