//! Hitting times along an edge-arrival process.
//!
//! A trace fixes the order in which the host graph's edges arrive; the
//! hitting time of a monotone property is the number of edges present
//! when it first holds. All times are counted in edges, so a value of
//! `t` means the property appeared with the `t`-th arrival.

use super::{connectivity::is_k_connected_edges, ProcessTrace, UnionFind};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// First time every vertex has degree at least `k`. Errors when the host
/// itself has a vertex of degree below `k`, since the time then never
/// comes.
pub fn min_degree_hitting_time(g: &Graph, trace: &ProcessTrace, k: u32) -> Result<usize> {
    check_trace(g, trace)?;
    if k == 0 {
        return Ok(0);
    }
    if g.min_degree() < k {
        return Err(Error::InvalidParameter(format!(
            "host minimum degree {} is below k = {k}",
            g.min_degree()
        )));
    }
    let mut deg = vec![0u32; g.n()];
    let mut deficient = g.n();
    for (t, &e) in trace.order().iter().enumerate() {
        let (u, v) = g.edges()[e as usize];
        for x in [u, v] {
            deg[x as usize] += 1;
            if deg[x as usize] == k {
                deficient -= 1;
            }
        }
        if deficient == 0 {
            return Ok(t + 1);
        }
    }
    unreachable!("host min degree was checked above");
}

/// First time the arrived edges span a connected graph on all vertices.
/// Errors when the host is disconnected.
pub fn connectivity_hitting_time(g: &Graph, trace: &ProcessTrace) -> Result<usize> {
    check_trace(g, trace)?;
    if g.n() <= 1 {
        return Ok(0);
    }
    let mut uf = UnionFind::new(g.n());
    for (t, &e) in trace.order().iter().enumerate() {
        let (u, v) = g.edges()[e as usize];
        uf.union(u, v);
        if uf.components() == 1 {
            return Ok(t + 1);
        }
    }
    Err(Error::InvalidParameter("host graph is disconnected".into()))
}

/// First time the arrived edges form a `k`-connected graph. Errors when
/// the host itself is not `k`-connected.
///
/// The property is monotone in the prefix, so the time is found by
/// binary search over prefix lengths. Prefixes shorter than each of
/// `ceil(k n / 2)` edges, `n - 1` edges, and the minimum-degree hitting
/// time cannot qualify, which pins the left end of the search.
pub fn k_connectivity_hitting_time(g: &Graph, trace: &ProcessTrace, k: u32) -> Result<usize> {
    check_trace(g, trace)?;
    if k == 0 {
        return Ok(0);
    }
    if k == 1 {
        return connectivity_hitting_time(g, trace);
    }
    let n = g.n();
    let m = trace.order().len();
    let tau_deg = min_degree_hitting_time(g, trace, k)?;
    let lower = tau_deg
        .max((k as usize * n).div_ceil(2))
        .max(n.saturating_sub(1));

    let prefix_ok = |t: usize| -> bool {
        let edges: Vec<(Vertex, Vertex)> = trace.order()[..t]
            .iter()
            .map(|&e| g.edges()[e as usize])
            .collect();
        is_k_connected_edges(n, &edges, k)
    };

    let mut lo = lower;
    let mut hi = m;
    let mut hi_verified = false;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if prefix_ok(mid) {
            hi = mid;
            hi_verified = true;
        } else {
            lo = mid + 1;
        }
    }
    if lo == m && !hi_verified && !prefix_ok(m) {
        return Err(Error::InvalidParameter(format!(
            "host graph is not {k}-connected"
        )));
    }
    Ok(lo)
}

fn check_trace(g: &Graph, trace: &ProcessTrace) -> Result<()> {
    if trace.order().len() != g.m() {
        return Err(Error::InvalidParameter(format!(
            "trace covers {} edges, host has {}",
            trace.order().len(),
            g.m()
        )));
    }
    Ok(())
}

/// Calls `f` with every permutation of `0..m` in lexicographic order.
/// Factorial blowup; callers gate on small `m`.
pub fn for_each_permutation(m: usize, mut f: impl FnMut(&[u32])) {
    assert!(m <= 12, "permutation enumeration is factorial in m");
    let mut perm: Vec<u32> = (0..m as u32).collect();
    loop {
        f(&perm);
        // Standard next-permutation step.
        let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return;
        };
        let j = (i + 1..m).rev().find(|&j| perm[j] > perm[i]).expect("successor exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}
