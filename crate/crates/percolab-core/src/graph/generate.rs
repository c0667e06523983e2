//! Graph family generators.

use super::{Graph, Vertex};
use crate::error::{Error, Result};
use crate::rng::{split_seed, stream};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Upper bound on the vertex count of generated graphs. Products and
/// hypercubes refuse to grow past this.
pub const PRODUCT_VERTEX_CAP: usize = 1 << 21;

/// Largest vertex count accepted by [`complete`]; the edge count grows
/// quadratically, so the cap is much smaller than for sparse families.
const COMPLETE_VERTEX_CAP: usize = 4096;

/// Restarts allowed before the pairing-model generator gives up.
const PAIRING_MAX_RESTARTS: u32 = 200;

/// Declarative description of a graph to generate. Serialized into
/// experiment configurations so a report records exactly which graph it
/// ran on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Hypercube { dim: u32 },
    Complete { n: usize },
    Cycle { n: usize },
    RandomRegular { n: usize, d: u32, seed: u64 },
    Product { factors: Vec<GeneratorSpec> },
    Tightness { d: u32, n: usize, seed: u64 },
}

/// Builds the graph described by `spec`. The tightness family loses its
/// layout metadata here; call [`super::tightness_construction`] directly
/// when the hub/gadget structure is needed afterwards.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    match spec {
        GeneratorSpec::Hypercube { dim } => hypercube(*dim),
        GeneratorSpec::Complete { n } => complete(*n),
        GeneratorSpec::Cycle { n } => cycle(*n),
        GeneratorSpec::RandomRegular { n, d, seed } => random_regular(*n, *d, *seed),
        GeneratorSpec::Product { factors } => {
            let built: Result<Vec<Graph>> = factors.iter().map(generate).collect();
            cartesian_product(&built?)
        }
        GeneratorSpec::Tightness { d, n, seed } => {
            let cspec = super::ConstructionSpec::new(*d, *n)?;
            Ok(super::tightness_construction(&cspec, *seed)?.graph)
        }
    }
}

/// `dim`-dimensional hypercube on `2^dim` vertices. Vertex `u` is the bit
/// string of its coordinates; edges join words at Hamming distance one.
pub fn hypercube(dim: u32) -> Result<Graph> {
    if (dim as usize) >= PRODUCT_VERTEX_CAP.trailing_zeros() as usize + 1 {
        return Err(Error::InvalidParameter(format!(
            "hypercube dimension {dim} exceeds vertex cap {PRODUCT_VERTEX_CAP}"
        )));
    }
    let n: usize = 1 << dim;
    let mut edges = Vec::with_capacity(n * dim as usize / 2);
    for u in 0..n as Vertex {
        for b in 0..dim {
            let v = u | (1 << b);
            if v != u {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("complete graph needs n >= 1".into()));
    }
    if n > COMPLETE_VERTEX_CAP {
        return Err(Error::InvalidParameter(format!(
            "complete graph on {n} vertices exceeds cap {COMPLETE_VERTEX_CAP}"
        )));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n as Vertex {
        for v in (u + 1)..n as Vertex {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges)
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter("cycle needs n >= 3".into()));
    }
    if n > PRODUCT_VERTEX_CAP {
        return Err(Error::InvalidParameter(format!(
            "cycle on {n} vertices exceeds cap {PRODUCT_VERTEX_CAP}"
        )));
    }
    let mut edges: Vec<(Vertex, Vertex)> = (0..n - 1).map(|i| (i as Vertex, i as Vertex + 1)).collect();
    edges.push((0, (n - 1) as Vertex));
    Graph::from_edges(n, edges)
}

/// Random simple `d`-regular graph via the pairing model.
///
/// Each vertex contributes `d` points. Points are matched one pair at a
/// time, drawing uniformly among the pairs of free points that keep the
/// multigraph simple. When the endgame paints itself into a corner (free
/// points remain but every pair would create a loop or a repeated edge)
/// the whole pairing restarts. Conditioned on success each step is
/// uniform over the admissible pairs, which keeps the output distribution
/// close to uniform over simple `d`-regular graphs.
pub fn random_regular(n: usize, d: u32, seed: u64) -> Result<Graph> {
    if (d as usize) >= n.max(1) {
        return Err(Error::InvalidParameter(format!(
            "degree {d} needs at least {} vertices, got {n}",
            d + 1
        )));
    }
    if n.checked_mul(d as usize).is_none_or(|p| p % 2 != 0) {
        return Err(Error::InvalidParameter(format!(
            "n * d must be even, got n = {n}, d = {d}"
        )));
    }
    if n > PRODUCT_VERTEX_CAP {
        return Err(Error::InvalidParameter(format!(
            "random regular graph on {n} vertices exceeds cap {PRODUCT_VERTEX_CAP}"
        )));
    }
    if d == 0 {
        return Graph::from_edges(n, Vec::new());
    }

    for restart in 0..PAIRING_MAX_RESTARTS {
        let mut rng = stream(split_seed(seed, restart as u64));
        if let Some(edges) = try_pairing(n, d, &mut rng) {
            return Graph::from_edges(n, edges);
        }
    }
    Err(Error::GenerationFailed(format!(
        "pairing model for ({n}, {d}) stalled {PAIRING_MAX_RESTARTS} times"
    )))
}

fn try_pairing(n: usize, d: u32, rng: &mut impl Rng) -> Option<Vec<(Vertex, Vertex)>> {
    let d = d as usize;
    let mut free: Vec<u32> = (0..(n * d) as u32).collect();
    let mut used = HashSet::with_capacity(n * d / 2);
    let mut edges = Vec::with_capacity(n * d / 2);
    let edge_key = |a: Vertex, b: Vertex| (a.min(b) as u64) << 32 | a.max(b) as u64;

    while !free.is_empty() {
        let mut found = None;
        for _ in 0..64 {
            let i = rng.random_range(0..free.len());
            let mut j = rng.random_range(0..free.len() - 1);
            if j >= i {
                j += 1;
            }
            let (va, vb) = (free[i] / d as u32, free[j] / d as u32);
            if va != vb && !used.contains(&edge_key(va, vb)) {
                found = Some((i, j));
                break;
            }
        }
        let (i, j) = match found {
            Some(pair) => pair,
            // Rejection is stalling; enumerate the admissible pairs
            // outright and draw one, or give up if none are left.
            None => {
                let mut admissible = Vec::new();
                for a in 0..free.len() {
                    for b in a + 1..free.len() {
                        let (va, vb) = (free[a] / d as u32, free[b] / d as u32);
                        if va != vb && !used.contains(&edge_key(va, vb)) {
                            admissible.push((a, b));
                        }
                    }
                }
                if admissible.is_empty() {
                    return None;
                }
                admissible[rng.random_range(0..admissible.len())]
            }
        };
        let (va, vb) = (free[i] / d as u32, free[j] / d as u32);
        used.insert(edge_key(va, vb));
        edges.push((va, vb));
        let (hi, lo) = (i.max(j), i.min(j));
        free.swap_remove(hi);
        free.swap_remove(lo);
    }
    Some(edges)
}

/// Cartesian product of the given factors. The vertex index is the mixed
/// radix encoding of the coordinate tuple with the last factor varying
/// fastest, so `product([a, b])` numbers vertices as `i_a * n_b + i_b`.
pub fn cartesian_product(factors: &[Graph]) -> Result<Graph> {
    if factors.is_empty() {
        return Err(Error::InvalidParameter("product of zero factors".into()));
    }
    let mut total: usize = 1;
    for g in factors {
        if g.n() == 0 {
            return Err(Error::InvalidParameter("product factor has no vertices".into()));
        }
        total = total
            .checked_mul(g.n())
            .filter(|&t| t <= PRODUCT_VERTEX_CAP)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "product vertex count exceeds cap {PRODUCT_VERTEX_CAP}"
                ))
            })?;
    }

    let mut edges = Vec::new();
    // Stride of coordinate c is the product of the sizes to its right.
    let mut weight: usize = 1;
    for c in (0..factors.len()).rev() {
        let fc = &factors[c];
        let nc = fc.n();
        let outer = total / (nc * weight);
        for h in 0..outer {
            let base = h * nc * weight;
            for &(a, b) in fc.edges() {
                for low in 0..weight {
                    let u = base + a as usize * weight + low;
                    let v = base + b as usize * weight + low;
                    edges.push((u as Vertex, v as Vertex));
                }
            }
        }
        weight *= nc;
    }
    Graph::from_edges(total, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypercube_small_cases() {
        let q0 = hypercube(0).unwrap();
        assert_eq!((q0.n(), q0.m()), (1, 0));
        let q1 = hypercube(1).unwrap();
        assert_eq!(q1.edges(), &[(0, 1)]);
        let q3 = hypercube(3).unwrap();
        assert_eq!((q3.n(), q3.m()), (8, 12));
        assert_eq!(q3.degree_uniform(), Some(3));
        assert_eq!(q3.is_canonical_hypercube(), Some(3));
        assert!(q3.is_connected());
    }

    #[test]
    fn complete_and_cycle() {
        let k5 = complete(5).unwrap();
        assert_eq!((k5.n(), k5.m()), (5, 10));
        assert_eq!(k5.degree_uniform(), Some(4));
        let k1 = complete(1).unwrap();
        assert_eq!((k1.n(), k1.m()), (1, 0));
        assert!(complete(0).is_err());

        let c4 = cycle(4).unwrap();
        assert_eq!(c4.edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(c4.degree_uniform(), Some(2));
        assert!(cycle(2).is_err());
        assert_eq!(cycle(3).unwrap(), complete(3).unwrap());
    }

    #[test]
    fn random_regular_is_regular_and_simple() {
        for &(n, d) in &[(10, 3), (7, 4), (16, 5), (30, 6), (9, 0)] {
            let g = random_regular(n, d, 11).unwrap();
            assert_eq!(g.n(), n);
            assert_eq!(g.degree_uniform(), Some(d), "({n}, {d})");
            assert_eq!(g.m(), n * d as usize / 2);
        }
    }

    #[test]
    fn random_regular_dense_extreme_is_complete() {
        // The only d-regular graph on d + 1 vertices is the complete one,
        // so the endgame fallback has to finish it.
        for seed in 0..5 {
            assert_eq!(random_regular(6, 5, seed).unwrap(), complete(6).unwrap());
        }
    }

    #[test]
    fn random_regular_determinism() {
        let a = random_regular(24, 3, 5).unwrap();
        let b = random_regular(24, 3, 5).unwrap();
        assert_eq!(a, b);
        let c = random_regular(24, 3, 6).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_regular_rejects_bad_parameters() {
        assert!(random_regular(5, 3, 0).is_err());
        assert!(random_regular(4, 4, 0).is_err());
        assert!(random_regular(0, 1, 0).is_err());
    }

    #[test]
    fn product_of_edges_is_hypercube() {
        let k2 = complete(2).unwrap();
        let q3 = cartesian_product(&[k2.clone(), k2.clone(), k2]).unwrap();
        assert_eq!(q3, hypercube(3).unwrap());
    }

    #[test]
    fn product_torus() {
        let c3 = cycle(3).unwrap();
        let t = cartesian_product(&[c3.clone(), c3]).unwrap();
        assert_eq!((t.n(), t.m()), (9, 18));
        assert_eq!(t.degree_uniform(), Some(4));
        // Vertex (i, j) sits at 3i + j; (0,0) neighbors both rows and columns.
        assert!(t.has_edge(0, 1));
        assert!(t.has_edge(0, 3));
        assert!(!t.has_edge(0, 4));
    }

    #[test]
    fn product_single_factor_is_identity() {
        let c5 = cycle(5).unwrap();
        assert_eq!(cartesian_product(std::slice::from_ref(&c5)).unwrap(), c5);
    }

    #[test]
    fn product_caps_and_errors() {
        assert!(cartesian_product(&[]).is_err());
        let k2 = complete(2).unwrap();
        let many: Vec<Graph> = (0..22).map(|_| k2.clone()).collect();
        assert!(cartesian_product(&many).is_err());
    }

    #[test]
    fn generator_spec_roundtrip() {
        let spec = GeneratorSpec::Product {
            factors: vec![
                GeneratorSpec::Cycle { n: 4 },
                GeneratorSpec::Complete { n: 3 },
            ],
        };
        let json = serde_json::to_string(&spec).unwrap();
        let back: GeneratorSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        let g = generate(&spec).unwrap();
        assert_eq!((g.n(), g.m()), (12, 4 * 3 + 3 * 4));
    }

    #[test]
    fn generate_dispatches_random_families() {
        let spec = GeneratorSpec::RandomRegular { n: 12, d: 3, seed: 9 };
        let g = generate(&spec).unwrap();
        assert_eq!(g.degree_uniform(), Some(3));
        assert_eq!(g, random_regular(12, 3, 9).unwrap());
    }
}
