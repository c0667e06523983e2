//! Enumeration of connected vertex sets.
//!
//! Classic reverse-search scheme: every connected set has a unique least
//! vertex (its root); sets are grown from each root by repeatedly pulling
//! a vertex out of an extension frontier restricted to ids above the
//! root, with the frontier bookkeeping arranged so that no set is ever
//! produced twice. The edge boundary of the current set is maintained
//! incrementally and handed to the visitor for free.

use crate::graph::{Graph, Vertex};
use std::ops::ControlFlow;

/// Calls `visit` exactly once for every connected vertex set of size
/// `1..=max_size`, together with its edge boundary. The slice holds the
/// set in discovery order: first element is the minimum, but the rest is
/// unsorted. Returns `false` if the visitor aborted the walk.
pub fn for_each_connected_set<F>(g: &Graph, max_size: usize, visit: &mut F) -> bool
where
    F: FnMut(&[Vertex], usize) -> ControlFlow<()>,
{
    if max_size == 0 || g.n() == 0 {
        return true;
    }
    let mut state = Esu::new(g, max_size, visit);
    for root in 0..g.n() as Vertex {
        if state.run_root(root).is_break() {
            return false;
        }
    }
    true
}

/// Like [`for_each_connected_set`], but restricted to connected sets
/// whose *least* vertex is `root`. To enumerate every connected set
/// containing an arbitrary vertex, relabel the graph so that vertex
/// becomes 0 and call this with `root = 0`.
pub fn for_each_connected_set_at<F>(g: &Graph, root: Vertex, max_size: usize, visit: &mut F) -> bool
where
    F: FnMut(&[Vertex], usize) -> ControlFlow<()>,
{
    assert!((root as usize) < g.n(), "root out of range");
    if max_size == 0 {
        return true;
    }
    let mut state = Esu::new(g, max_size, visit);
    state.run_root(root).is_continue()
}

struct Esu<'a, F> {
    g: &'a Graph,
    max_size: usize,
    in_sub: Vec<bool>,
    /// Number of neighbors each vertex has inside the current set.
    adj_count: Vec<u32>,
    sub: Vec<Vertex>,
    boundary: usize,
    visit: &'a mut F,
}

impl<'a, F> Esu<'a, F>
where
    F: FnMut(&[Vertex], usize) -> ControlFlow<()>,
{
    fn new(g: &'a Graph, max_size: usize, visit: &'a mut F) -> Self {
        Esu {
            g,
            max_size,
            in_sub: vec![false; g.n()],
            adj_count: vec![0; g.n()],
            sub: Vec::with_capacity(max_size),
            boundary: 0,
            visit,
        }
    }

    /// Enumerates every connected set whose minimum vertex is `root`,
    /// assuming all ids below `root` are excluded from extension.
    fn run_root(&mut self, root: Vertex) -> ControlFlow<()> {
        let ext: Vec<Vertex> =
            self.g.neighbors(root).iter().copied().filter(|&u| u > root).collect();
        self.push(root);
        let flow = self.extend(root, ext);
        self.pop(root);
        flow
    }

    fn push(&mut self, w: Vertex) {
        self.boundary = self.boundary + self.g.degree(w) as usize
            - 2 * self.adj_count[w as usize] as usize;
        self.in_sub[w as usize] = true;
        for &x in self.g.neighbors(w) {
            self.adj_count[x as usize] += 1;
        }
        self.sub.push(w);
    }

    fn pop(&mut self, w: Vertex) {
        self.sub.pop();
        for &x in self.g.neighbors(w) {
            self.adj_count[x as usize] -= 1;
        }
        self.in_sub[w as usize] = false;
        self.boundary = self.boundary + 2 * self.adj_count[w as usize] as usize
            - self.g.degree(w) as usize;
    }

    fn extend(&mut self, root: Vertex, mut ext: Vec<Vertex>) -> ControlFlow<()> {
        (self.visit)(&self.sub, self.boundary)?;
        if self.sub.len() == self.max_size {
            return ControlFlow::Continue(());
        }
        while !ext.is_empty() {
            // Smallest candidate first gives a stable, seedless order.
            let pos = ext
                .iter()
                .enumerate()
                .min_by_key(|&(_, &x)| x)
                .map(|(i, _)| i)
                .expect("ext is nonempty");
            let w = ext.remove(pos);
            // Members of any frontier are adjacent to the current set, so
            // `adj_count == 0` filters both past and present frontier
            // vertices; only fresh exclusive neighbors of `w` get added.
            let mut next_ext = ext.clone();
            for &u in self.g.neighbors(w) {
                if u > root && !self.in_sub[u as usize] && self.adj_count[u as usize] == 0 {
                    next_ext.push(u);
                }
            }
            self.push(w);
            let flow = self.extend(root, next_ext);
            self.pop(w);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, random_regular, Graph, VertexSet};
    use std::collections::HashMap;

    /// All connected sets by brute force over the power set.
    fn brute_connected_sets(g: &Graph, max_size: usize) -> HashMap<Vec<Vertex>, usize> {
        let n = g.n();
        assert!(n <= 20);
        let mut out = HashMap::new();
        for mask in 1u32..(1 << n) {
            let verts: Vec<Vertex> = (0..n as u32).filter(|&v| mask >> v & 1 == 1).collect();
            if verts.len() > max_size || !induced_connected(g, &verts) {
                continue;
            }
            let set = VertexSet::new(verts.clone(), n).unwrap();
            let boundary = g.edge_boundary(&set).unwrap();
            out.insert(verts, boundary);
        }
        out
    }

    fn induced_connected(g: &Graph, verts: &[Vertex]) -> bool {
        let mut seen = vec![false; g.n()];
        let inside: Vec<bool> = {
            let mut m = vec![false; g.n()];
            for &v in verts {
                m[v as usize] = true;
            }
            m
        };
        let mut stack = vec![verts[0]];
        seen[verts[0] as usize] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if inside[y as usize] && !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == verts.len()
    }

    fn collect_esu(g: &Graph, max_size: usize) -> HashMap<Vec<Vertex>, usize> {
        let mut out = HashMap::new();
        let complete = for_each_connected_set(g, max_size, &mut |set, boundary| {
            let mut key = set.to_vec();
            key.sort_unstable();
            let dup = out.insert(key, boundary);
            assert!(dup.is_none(), "set visited twice: {set:?}");
            ControlFlow::Continue(())
        });
        assert!(complete);
        out
    }

    #[test]
    fn cycle_counts_by_size() {
        // In C_n every connected set of size 1 <= s < n is an arc; there
        // are n of each, plus the full cycle.
        let c5 = cycle(5).unwrap();
        let sets = collect_esu(&c5, 5);
        for s in 1..5 {
            assert_eq!(sets.keys().filter(|k| k.len() == s).count(), 5, "size {s}");
        }
        assert_eq!(sets.keys().filter(|k| k.len() == 5).count(), 1);
        // Arc boundaries are 2, the whole cycle has boundary 0.
        for (k, b) in &sets {
            assert_eq!(*b, if k.len() == 5 { 0 } else { 2 });
        }
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let graphs = vec![
            complete(4).unwrap(),
            cycle(6).unwrap(),
            random_regular(9, 4, 3).unwrap(),
            Graph::from_edges(7, vec![(0, 1), (1, 2), (3, 4), (5, 6), (4, 5)]).unwrap(),
            Graph::from_edges(3, Vec::new()).unwrap(),
        ];
        for g in graphs {
            for max_size in [1, 2, 3, g.n()] {
                assert_eq!(collect_esu(&g, max_size), brute_connected_sets(&g, max_size));
            }
        }
    }

    #[test]
    fn rooted_variant_agrees_with_brute_force() {
        let g = random_regular(8, 3, 11).unwrap();
        let all = brute_connected_sets(&g, 4);
        for root in 0..8u32 {
            let mut got = HashMap::new();
            let done = for_each_connected_set_at(&g, root, 4, &mut |set, boundary| {
                let mut key = set.to_vec();
                key.sort_unstable();
                assert_eq!(key[0], root, "set not rooted at its minimum");
                assert!(got.insert(key, boundary).is_none());
                ControlFlow::Continue(())
            });
            assert!(done);
            let expected: HashMap<Vec<Vertex>, usize> = all
                .iter()
                .filter(|(k, _)| k[0] == root)
                .map(|(k, &b)| (k.clone(), b))
                .collect();
            assert_eq!(got, expected, "root {root}");
        }
    }

    #[test]
    fn abort_stops_early() {
        let g = complete(6).unwrap();
        let mut visits = 0;
        let completed = for_each_connected_set(&g, 6, &mut |_, _| {
            visits += 1;
            if visits == 3 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert!(!completed);
        assert_eq!(visits, 3);
    }

    #[test]
    fn zero_max_size_visits_nothing() {
        let g = complete(3).unwrap();
        let completed = for_each_connected_set(&g, 0, &mut |_, _| unreachable!());
        assert!(completed);
    }
}
