//! Regular graphs that keep their connectivity threshold far above their
//! minimum-degree threshold.
//!
//! The construction glues small dense gadgets onto a sparse expander.
//! Take `n / (d + 2)` hub vertices joined into a random `d1`-regular
//! graph with a certified small spectral radius, `d1 = 10 d / 19`. Every
//! hub gets a private gadget: a clique on `d + 1` vertices with a
//! matching of `(d - d1) / 2` edges removed, and the hub wired to the
//! `d - d1` matched endpoints. All degrees come out to exactly `d`, every
//! gadget talks to the rest of the graph only through its hub, and the
//! hub-to-gadget bridges are few enough that random edge deletion cuts
//! off some gadget long before minimum degree drops.

use super::{random_regular, Graph, Vertex};
use crate::error::{Error, Result};
use crate::rng::split_seed;
use crate::spectral::second_eigenvalue;
use serde::{Deserialize, Serialize};
use std::ops::Range;

/// Eigensolver tolerance used when certifying the hub expander.
const HUB_EIGEN_TOL: f64 = 1e-7;

/// Parameters of the construction, validated at creation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    /// Target degree; must be a positive multiple of 38 so that the split
    /// `d1 = 10 d / 19` and the removed matching are both integral.
    pub d: u32,
    /// Vertex count; a multiple of `d + 2` of size at least `d^2`.
    pub n: usize,
    /// Degree of the hub expander.
    pub d1: u32,
    /// Largest acceptable spectral radius (away from the top eigenvalue)
    /// for the hub expander.
    pub lambda_ceiling: f64,
    /// Hub expander redraws allowed before giving up.
    pub max_retries: u32,
}

impl ConstructionSpec {
    pub fn new(d: u32, n: usize) -> Result<Self> {
        if d == 0 || d % 38 != 0 {
            return Err(Error::InvalidParameter(format!(
                "degree must be a positive multiple of 38, got {d}"
            )));
        }
        if n % (d as usize + 2) != 0 {
            return Err(Error::InvalidParameter(format!(
                "vertex count {n} is not a multiple of d + 2 = {}",
                d + 2
            )));
        }
        if n < (d as usize) * (d as usize) {
            return Err(Error::InvalidParameter(format!(
                "vertex count {n} is below d^2 = {}",
                d as usize * d as usize
            )));
        }
        let d1 = 10 * d / 19;
        let hub_count = n / (d as usize + 2);
        if hub_count <= d1 as usize {
            return Err(Error::InvalidParameter(format!(
                "only {hub_count} hubs for a {d1}-regular hub expander"
            )));
        }
        Ok(ConstructionSpec {
            d,
            n,
            d1,
            lambda_ceiling: 2.1 * (d1 as f64).sqrt(),
            max_retries: 64,
        })
    }

    pub fn with_lambda_ceiling(mut self, ceiling: f64) -> Self {
        self.lambda_ceiling = ceiling;
        self
    }

    pub fn with_max_retries(mut self, retries: u32) -> Self {
        self.max_retries = retries;
        self
    }

    pub fn hub_count(&self) -> usize {
        self.n / (self.d as usize + 2)
    }

    /// Vertices in one gadget.
    pub fn gadget_size(&self) -> usize {
        self.d as usize + 1
    }

    /// Edges removed from each gadget clique, equal to the number of
    /// hub bridges divided by two.
    pub fn matching_size(&self) -> usize {
        (self.d - self.d1) as usize / 2
    }

    /// Bridges between a hub and its gadget.
    pub fn bridge_count(&self) -> usize {
        (self.d - self.d1) as usize
    }
}

/// A constructed graph together with its layout metadata.
#[derive(Clone, Debug)]
pub struct TightnessGraph {
    pub graph: Graph,
    pub spec: ConstructionSpec,
    /// Certified spectral radius of the hub expander (largest nontrivial
    /// eigenvalue in absolute value).
    pub h_lambda: f64,
    /// Hub expander redraws that were needed.
    pub retries_used: u32,
}

impl TightnessGraph {
    /// Hubs occupy the low vertex ids.
    pub fn hubs(&self) -> Range<Vertex> {
        0..self.spec.hub_count() as Vertex
    }

    pub fn is_hub(&self, v: Vertex) -> bool {
        (v as usize) < self.spec.hub_count()
    }

    /// Vertex range of the gadget attached to `hub`.
    pub fn gadget_vertices(&self, hub: Vertex) -> Range<Vertex> {
        let size = self.spec.gadget_size();
        let base = self.spec.hub_count() + hub as usize * size;
        base as Vertex..(base + size) as Vertex
    }

    /// Canonical edge ids of the bridges between `hub` and its gadget.
    /// A gadget is severed exactly when all of these edges are absent.
    pub fn bridge_edges(&self, hub: Vertex) -> Vec<usize> {
        let base = self.gadget_vertices(hub).start;
        (0..self.spec.bridge_count() as Vertex)
            .map(|t| {
                self.graph
                    .edge_index(hub, base + t)
                    .expect("bridge edge exists by construction")
            })
            .collect()
    }

    /// Wraps an existing graph after checking it has the canonical
    /// layout, re-measuring the hub expander spectrum.
    pub fn from_graph(graph: Graph, spec: ConstructionSpec) -> Result<Self> {
        validate_tightness(&graph, &spec)?;
        let hub_count = spec.hub_count();
        let hub_edges: Vec<(Vertex, Vertex)> = graph
            .edges()
            .iter()
            .copied()
            .filter(|&(_, v)| (v as usize) < hub_count)
            .collect();
        let hub_graph = Graph::from_edges(hub_count, hub_edges)?;
        let gap = second_eigenvalue(&hub_graph, HUB_EIGEN_TOL)?;
        Ok(TightnessGraph {
            graph,
            spec: spec.to_owned(),
            h_lambda: gap.lambda_abs(),
            retries_used: 0,
        })
    }
}

/// Builds the construction. The hub expander is redrawn (deterministically
/// in `seed`) until its spectral radius clears the ceiling.
pub fn tightness_construction(spec: &ConstructionSpec, seed: u64) -> Result<TightnessGraph> {
    let hub_count = spec.hub_count();
    let mut last_lambda = f64::NAN;
    for retry in 0..spec.max_retries {
        let h = random_regular(hub_count, spec.d1, split_seed(seed, retry as u64))?;
        let gap = second_eigenvalue(&h, HUB_EIGEN_TOL)?;
        let lambda = gap.lambda_abs();
        last_lambda = lambda;
        if lambda <= spec.lambda_ceiling {
            let graph = assemble(spec, &h)?;
            validate_tightness(&graph, spec)?;
            return Ok(TightnessGraph {
                graph,
                spec: *spec,
                h_lambda: lambda,
                retries_used: retry,
            });
        }
    }
    Err(Error::GenerationFailed(format!(
        "hub expander missed lambda ceiling {:.4} in {} draws (last {:.4})",
        spec.lambda_ceiling, spec.max_retries, last_lambda
    )))
}

fn assemble(spec: &ConstructionSpec, hub_graph: &Graph) -> Result<Graph> {
    let hub_count = spec.hub_count();
    let gadget = spec.gadget_size();
    let bridges = spec.bridge_count();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(spec.n * spec.d as usize / 2);
    edges.extend_from_slice(hub_graph.edges());
    for hub in 0..hub_count {
        let base = (hub_count + hub * gadget) as Vertex;
        // Clique minus the matching on the first `bridges` locals, which
        // pairs up consecutive vertices (2t, 2t + 1).
        for a in 0..gadget as Vertex {
            for b in (a + 1)..gadget as Vertex {
                let matched = b == a + 1 && a % 2 == 0 && (b as usize) < bridges;
                if !matched {
                    edges.push((base + a, base + b));
                }
            }
        }
        for t in 0..bridges as Vertex {
            edges.push((hub as Vertex, base + t));
        }
    }
    Graph::from_edges(spec.n, edges)
}

/// Checks that `g` is exactly the canonical layout for `spec`: correct
/// hub degrees into the expander and across the bridges, each gadget a
/// clique minus the canonical matching, and no stray edges.
pub fn validate_tightness(g: &Graph, spec: &ConstructionSpec) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidParameter(format!("tightness layout: {msg}")));
    if g.n() != spec.n {
        return bad(format!("expected {} vertices, got {}", spec.n, g.n()));
    }
    if g.degree_uniform() != Some(spec.d) {
        return bad(format!("graph is not {}-regular", spec.d));
    }
    let hub_count = spec.hub_count();
    let gadget = spec.gadget_size();
    let bridges = spec.bridge_count();

    for hub in 0..hub_count as Vertex {
        let base = (hub_count + hub as usize * gadget) as Vertex;
        let mut into_hubs = 0usize;
        let mut into_gadget = 0usize;
        for &w in g.neighbors(hub) {
            if (w as usize) < hub_count {
                into_hubs += 1;
            } else if w >= base && w < base + gadget as Vertex {
                if w - base >= bridges as Vertex {
                    return bad(format!("hub {hub} bridges to unmatched local {}", w - base));
                }
                into_gadget += 1;
            } else {
                return bad(format!("hub {hub} touches foreign vertex {w}"));
            }
        }
        if into_hubs != spec.d1 as usize || into_gadget != bridges {
            return bad(format!(
                "hub {hub} has {into_hubs} expander edges and {into_gadget} bridges"
            ));
        }

        for a in 0..gadget as Vertex {
            let va = base + a;
            for &w in g.neighbors(va) {
                let inside = w >= base && w < base + gadget as Vertex;
                if !inside && w != hub {
                    return bad(format!("gadget vertex {va} touches foreign vertex {w}"));
                }
            }
            for b in (a + 1)..gadget as Vertex {
                let matched = b == a + 1 && a % 2 == 0 && (b as usize) < bridges;
                if g.has_edge(va, base + b) == matched {
                    return bad(format!(
                        "gadget {hub} pair ({a}, {b}) should be {}",
                        if matched { "removed" } else { "present" }
                    ));
                }
            }
        }
    }
    Ok(())
}
