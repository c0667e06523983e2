//! Connectivity machinery: union-find, a flow-based k-connectivity test,
//! and an exhaustive vertex connectivity oracle for tiny graphs.

use crate::graph::{Graph, Vertex};

/// Union-find with path halving and union by rank.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns whether they were
    /// distinct.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (hi, lo) = if self.rank[ra as usize] >= self.rank[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[lo as usize] = hi;
        if self.rank[hi as usize] == self.rank[lo as usize] {
            self.rank[hi as usize] += 1;
        }
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

/// Unit-capacity flow network over split vertices, rebuilt per edge set
/// and reused across terminal pairs.
struct SplitFlow {
    head: Vec<i32>,
    next: Vec<i32>,
    to: Vec<u32>,
    cap: Vec<u8>,
    cap0: Vec<u8>,
    // BFS scratch, epoch-stamped so it never needs clearing.
    mark: Vec<u32>,
    parent_arc: Vec<u32>,
    epoch: u32,
    queue: Vec<u32>,
}

impl SplitFlow {
    /// Nodes `2v` and `2v + 1` are the in and out halves of vertex `v`;
    /// the internal arc has capacity one, edge arcs go out-half to
    /// in-half in both directions.
    fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let nodes = 2 * n;
        let mut f = SplitFlow {
            head: vec![-1; nodes],
            next: Vec::with_capacity(2 * (n + 2 * edges.len())),
            to: Vec::with_capacity(2 * (n + 2 * edges.len())),
            cap: Vec::new(),
            cap0: Vec::new(),
            mark: vec![0; nodes],
            parent_arc: vec![0; nodes],
            epoch: 0,
            queue: Vec::with_capacity(nodes),
        };
        for v in 0..n as u32 {
            f.add_arc(2 * v, 2 * v + 1, 1);
        }
        for &(a, b) in edges {
            f.add_arc(2 * a + 1, 2 * b, 1);
            f.add_arc(2 * b + 1, 2 * a, 1);
        }
        f.cap0 = f.cap.clone();
        f
    }

    /// Appends a forward arc and its zero-capacity reverse; the pair
    /// shares an index up to the low bit, so `arc ^ 1` is the partner.
    fn add_arc(&mut self, u: u32, v: u32, c: u8) {
        let fwd = self.to.len();
        self.to.push(v);
        self.cap.push(c);
        self.next.push(self.head[u as usize]);
        self.head[u as usize] = fwd as i32;

        let rev = self.to.len();
        self.to.push(u);
        self.cap.push(0);
        self.next.push(self.head[v as usize]);
        self.head[v as usize] = rev as i32;
    }

    fn reset(&mut self) {
        self.cap.copy_from_slice(&self.cap0);
    }

    /// Max flow from vertex `s` to vertex `t`, stopping once `limit` is
    /// reached.
    fn max_flow_capped(&mut self, s: Vertex, t: Vertex, limit: u32) -> u32 {
        self.reset();
        let source = 2 * s + 1;
        let sink = 2 * t;
        let mut flow = 0;
        while flow < limit && self.augment(source, sink) {
            flow += 1;
        }
        flow
    }

    fn augment(&mut self, source: u32, sink: u32) -> bool {
        self.epoch += 1;
        self.queue.clear();
        self.queue.push(source);
        self.mark[source as usize] = self.epoch;
        let mut qi = 0;
        'bfs: while qi < self.queue.len() {
            let u = self.queue[qi];
            qi += 1;
            let mut a = self.head[u as usize];
            while a >= 0 {
                let arc = a as usize;
                let v = self.to[arc];
                if self.cap[arc] > 0 && self.mark[v as usize] != self.epoch {
                    self.mark[v as usize] = self.epoch;
                    self.parent_arc[v as usize] = arc as u32;
                    if v == sink {
                        break 'bfs;
                    }
                    self.queue.push(v);
                }
                a = self.next[arc];
            }
        }
        if self.mark[sink as usize] != self.epoch {
            return false;
        }
        let mut v = sink;
        while v != source {
            let arc = self.parent_arc[v as usize] as usize;
            self.cap[arc] -= 1;
            self.cap[arc ^ 1] += 1;
            // The partner arc points back at this arc's tail.
            v = self.to[arc ^ 1];
        }
        true
    }
}

/// True when the graph on `n` vertices with the given edges is
/// `k`-connected.
///
/// Every graph counts as 0-connected. For `k >= 1` the graph must have
/// more than `k` vertices. The test fixes the `k` smallest vertex ids
/// and checks, for each of them, that the vertex-capacitated max flow to
/// every non-neighbor reaches `k`; by the separator argument any cut of
/// size below `k` misses one of the fixed vertices and is caught by one
/// of these flows.
pub fn is_k_connected_edges(n: usize, edges: &[(Vertex, Vertex)], k: u32) -> bool {
    if k == 0 {
        return n >= 1;
    }
    if n <= k as usize {
        return false;
    }
    // Cheap necessary conditions first.
    let mut deg = vec![0u32; n];
    for &(a, b) in edges {
        deg[a as usize] += 1;
        deg[b as usize] += 1;
    }
    if deg.iter().any(|&d| d < k) {
        return false;
    }
    if k == 1 {
        let mut uf = UnionFind::new(n);
        for &(a, b) in edges {
            uf.union(a, b);
        }
        return uf.components() == 1;
    }
    if k == 2 {
        return two_connected(n, edges, &deg);
    }

    let mut adjacent = vec![false; n];
    let mut flow = SplitFlow::new(n, edges);
    for s in 0..k {
        for &(a, b) in edges {
            if a == s {
                adjacent[b as usize] = true;
            } else if b == s {
                adjacent[a as usize] = true;
            }
        }
        for t in 0..n as u32 {
            if t != s && !adjacent[t as usize] && flow.max_flow_capped(s, t, k) < k {
                return false;
            }
        }
        adjacent.fill(false);
    }
    true
}

pub fn is_k_connected(g: &Graph, k: u32) -> bool {
    is_k_connected_edges(g.n(), g.edges(), k)
}

/// 2-connectivity in `O(n + m)`: connected with no articulation vertex
/// (for `n >= 3`, which the caller's `n > k` guard ensures). Iterative
/// depth-first lowlink search, so host-sized graphs cannot overflow the
/// call stack.
fn two_connected(n: usize, edges: &[(Vertex, Vertex)], deg: &[u32]) -> bool {
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + deg[v] as usize;
    }
    let mut cursor = offset.clone();
    let mut adj = vec![0u32; 2 * edges.len()];
    for &(a, b) in edges {
        adj[cursor[a as usize]] = b;
        cursor[a as usize] += 1;
        adj[cursor[b as usize]] = a;
        cursor[b as usize] += 1;
    }

    const UNSEEN: u32 = u32::MAX;
    let mut order = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut parent = vec![UNSEEN; n];
    // Per-vertex scan position doubles as the DFS program counter.
    let mut next = offset[..n].to_vec();
    let mut stack: Vec<u32> = Vec::with_capacity(n);
    let mut clock = 1u32;
    let mut root_children = 0u32;

    order[0] = 0;
    stack.push(0);
    while let Some(&u) = stack.last() {
        let ui = u as usize;
        if next[ui] < offset[ui + 1] {
            let w = adj[next[ui]];
            next[ui] += 1;
            let wi = w as usize;
            if order[wi] == UNSEEN {
                parent[wi] = u;
                order[wi] = clock;
                low[wi] = clock;
                clock += 1;
                if u == 0 {
                    root_children += 1;
                }
                stack.push(w);
            } else if w != parent[ui] {
                low[ui] = low[ui].min(order[wi]);
            }
        } else {
            stack.pop();
            if let Some(&p) = stack.last() {
                let pi = p as usize;
                low[pi] = low[pi].min(low[ui]);
                // Non-root p separates the finished subtree under u.
                if p != 0 && low[ui] >= order[pi] {
                    return false;
                }
            }
        }
    }
    clock as usize == n && root_children < 2
}

/// Exact vertex connectivity by exhausting separators; meant for cross
/// checking on graphs of at most ~20 vertices.
pub fn vertex_connectivity_small(g: &Graph) -> u32 {
    let n = g.n();
    assert!(n <= 20, "exhaustive connectivity oracle is exponential in n");
    if n == 0 {
        return 0;
    }
    for size in 0..n.saturating_sub(1) {
        let mut mask: u64 = (1u64 << size) - 1;
        loop {
            if connected_after_removal(g, mask) == Some(false) {
                return size as u32;
            }
            if size == 0 {
                break;
            }
            // Gosper's hack: next subset of the same popcount.
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            if r >= 1u64 << n || mask == 0 {
                break;
            }
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    (n - 1) as u32
}

/// BFS over the vertices not in `removed`; `None` when fewer than two
/// vertices remain (such removals cannot disconnect anything).
fn connected_after_removal(g: &Graph, removed: u64) -> Option<bool> {
    let n = g.n();
    let alive = n - removed.count_ones() as usize;
    if alive < 2 {
        return None;
    }
    let start = (0..n as u32).find(|&v| removed >> v & 1 == 0)?;
    let mut seen = vec![false; n];
    seen[start as usize] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            if removed >> y & 1 == 0 && !seen[y as usize] {
                seen[y as usize] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    Some(count == alive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, hypercube, random_regular, Graph};
    use crate::rng::stream;
    use rand::Rng;

    #[test]
    fn union_find_merges_and_counts() {
        let mut uf = UnionFind::new(5);
        assert_eq!(uf.components(), 5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert_eq!(uf.components(), 3);
        assert_eq!(uf.find(0), uf.find(1));
        assert_ne!(uf.find(0), uf.find(3));
    }

    #[test]
    fn oracle_known_connectivities() {
        assert_eq!(vertex_connectivity_small(&complete(5).unwrap()), 4);
        assert_eq!(vertex_connectivity_small(&cycle(6).unwrap()), 2);
        assert_eq!(vertex_connectivity_small(&hypercube(3).unwrap()), 3);
        let path = Graph::from_edges(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(vertex_connectivity_small(&path), 1);
        let split = Graph::from_edges(5, vec![(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(vertex_connectivity_small(&split), 0);
        let lone = Graph::from_edges(1, Vec::new()).unwrap();
        assert_eq!(vertex_connectivity_small(&lone), 0);
        assert_eq!(vertex_connectivity_small(&complete(2).unwrap()), 1);
    }

    #[test]
    fn flow_test_known_cases() {
        let k4 = complete(4).unwrap();
        assert!(is_k_connected(&k4, 3));
        assert!(!is_k_connected(&k4, 4));
        let q3 = hypercube(3).unwrap();
        assert!(is_k_connected(&q3, 3));
        assert!(!is_k_connected(&q3, 4));
        let c5 = cycle(5).unwrap();
        assert!(is_k_connected(&c5, 2));
        assert!(!is_k_connected(&c5, 3));
        let lone = Graph::from_edges(1, Vec::new()).unwrap();
        assert!(is_k_connected(&lone, 0));
        assert!(!is_k_connected(&lone, 1));
    }

    #[test]
    fn flow_detects_cut_vertices() {
        // Two triangles sharing vertex 2: 1-connected, not 2-connected.
        let bowtie = Graph::from_edges(5, vec![(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(is_k_connected(&bowtie, 1));
        assert!(!is_k_connected(&bowtie, 2));
    }

    #[test]
    fn articulation_path_handles_awkward_shapes() {
        // Root of the search (vertex 0) as the only cut vertex.
        let star_of_triangles = Graph::from_edges(
            5,
            vec![(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)],
        )
        .unwrap();
        assert!(!is_k_connected(&star_of_triangles, 2));
        // Cut vertex discovered deep in the walk.
        let barbell = Graph::from_edges(
            7,
            vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)],
        )
        .unwrap();
        assert!(!is_k_connected(&barbell, 2));
        // Long cycle: 2-connected but nothing more.
        let c50 = crate::graph::cycle(50).unwrap();
        assert!(is_k_connected(&c50, 2));
        assert!(!is_k_connected(&c50, 3));
        // Disconnected despite uniform degree 2.
        let rings = Graph::from_edges(6, vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!is_k_connected(&rings, 2));
    }

    #[test]
    fn flow_agrees_with_oracle_on_random_graphs() {
        let mut rng = stream(0xBEEF);
        for round in 0..60 {
            let n = 4 + (round % 7);
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    if rng.random::<f64>() < 0.45 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            let kappa = vertex_connectivity_small(&g);
            for k in 0..=6u32 {
                assert_eq!(
                    is_k_connected(&g, k),
                    k == 0 || (kappa >= k && g.n() > k as usize),
                    "n = {n}, kappa = {kappa}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn regular_graph_connectivity() {
        // Random 3-regular graphs on few vertices are usually 3-connected;
        // verify agreement with the oracle rather than the typical value.
        for seed in 0..10 {
            let g = random_regular(10, 3, seed).unwrap();
            let kappa = vertex_connectivity_small(&g);
            for k in 1..=4u32 {
                assert_eq!(is_k_connected(&g, k), kappa >= k, "seed {seed} k {k}");
            }
        }
    }
}
