//! Exact counts of subgraph trees through a fixed vertex.
//!
//! A subgraph tree on `m` vertices is an edge set forming a tree whose
//! vertex set has size `m`. The count through a vertex `v` decomposes
//! over connected vertex sets: every tree spans exactly one connected
//! `m`-set containing `v`, so the total is the sum, over those sets, of
//! the number of spanning trees of the induced subgraph. Connected sets
//! are enumerated without duplication after relabeling `v` to the
//! minimum id; spanning trees come from an integer determinant of the
//! reduced Laplacian (matrix-tree theorem).

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::spectral::for_each_connected_set_at;
use std::ops::ControlFlow;

/// Caps the number of connected sets examined by one call.
const SET_BUDGET: u64 = 20_000_000;

/// Largest supported tree order; counts blow up combinatorially beyond
/// this.
pub const MAX_TREE_ORDER: usize = 6;

/// Result of [`count_rooted_trees`]: the exact tree count alongside the
/// degree-based ceiling `(e * d)^(m - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TreeCount {
    pub count: u64,
    /// `(e * d)^(m - 1)`, with `d` the host degree (maximum degree on
    /// an irregular host).
    pub bound: f64,
}

impl TreeCount {
    pub fn within_bound(&self) -> bool {
        (self.count as f64) <= self.bound
    }
}

/// Counts subgraph trees with exactly `m_size` vertices, one of which
/// is `v`.
///
/// Errors on an out-of-range vertex, on `m_size` outside
/// `1..=`[`MAX_TREE_ORDER`], and when the enumeration budget is
/// exhausted.
pub fn count_rooted_trees(g: &Graph, v: Vertex, m_size: usize) -> Result<TreeCount> {
    count_rooted_trees_budgeted(g, v, m_size, SET_BUDGET)
}

fn count_rooted_trees_budgeted(
    g: &Graph,
    v: Vertex,
    m_size: usize,
    budget: u64,
) -> Result<TreeCount> {
    if (v as usize) >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    if m_size == 0 || m_size > MAX_TREE_ORDER {
        return Err(Error::InvalidParameter(format!(
            "tree order must lie in 1..={MAX_TREE_ORDER}, got {m_size}"
        )));
    }
    let d = g
        .degree_uniform()
        .unwrap_or_else(|| (0..g.n() as Vertex).map(|u| g.degree(u)).max().unwrap_or(0));
    let bound = (std::f64::consts::E * f64::from(d)).powi(m_size as i32 - 1);

    // Relabel so the pinned vertex becomes 0; connected sets containing
    // the minimum id are exactly the sets containing `v`.
    let swapped = |u: Vertex| -> Vertex {
        if u == v {
            0
        } else if u == 0 {
            v
        } else {
            u
        }
    };
    let h = if v == 0 {
        g.clone()
    } else {
        let edges: Vec<(Vertex, Vertex)> =
            g.edges().iter().map(|&(a, b)| (swapped(a), swapped(b))).collect();
        Graph::from_edges(g.n(), edges).expect("relabeling preserves validity")
    };

    let mut count: u64 = 0;
    let mut visited: u64 = 0;
    let mut exhausted = false;
    let completed = for_each_connected_set_at(&h, 0, m_size, &mut |set, _| {
        visited += 1;
        if visited > budget {
            exhausted = true;
            return ControlFlow::Break(());
        }
        if set.len() == m_size {
            count += spanning_trees(&h, set);
        }
        ControlFlow::Continue(())
    });
    if exhausted || !completed {
        return Err(Error::BudgetExceeded(budget));
    }
    Ok(TreeCount { count, bound })
}

/// Number of spanning trees of the subgraph induced on `verts`, by the
/// matrix-tree theorem: the determinant of the reduced Laplacian,
/// computed exactly with fraction-free (Bareiss) elimination.
fn spanning_trees(g: &Graph, verts: &[Vertex]) -> u64 {
    let m = verts.len();
    if m <= 1 {
        return 1;
    }
    // Reduced Laplacian: drop the row and column of the last vertex.
    let r = m - 1;
    let mut a = [[0i64; MAX_TREE_ORDER - 1]; MAX_TREE_ORDER - 1];
    for i in 0..m {
        for j in (i + 1)..m {
            if g.has_edge(verts[i], verts[j]) {
                if i < r && j < r {
                    a[i][j] = -1;
                    a[j][i] = -1;
                }
                if i < r {
                    a[i][i] += 1;
                }
                if j < r {
                    a[j][j] += 1;
                }
            }
        }
    }
    // Bareiss elimination keeps every intermediate value an exact
    // integer; the determinant lands in the last pivot.
    let mut sign = 1i64;
    let mut prev = 1i64;
    for k in 0..r {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..r).find(|&i| a[i][k] != 0) else {
                return 0; // singular: induced subgraph is disconnected
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in (k + 1)..r {
            for j in (k + 1)..r {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    let det = sign * a[r - 1][r - 1];
    debug_assert!(det >= 0, "spanning tree count cannot be negative");
    det.max(0) as u64
}
