//! Basic graphs and hypergraphs.
//!
//! A (hyper)graph is basic when every vertex weighting is the incidence sum
//! of some edge weighting, i.e. when the co-boundaries (incidence rows) of
//! its vertices are independent. For ordinary multigraphs this happens iff
//! no connected component is bipartite. A point set `M` maps to the
//! hypergraph `G(M)` whose hyperedges are its nonempty layer intersections,
//! and `M` is basic iff `G(M)` is.
//!
//! Vertices are 0-indexed here; the JSON layer converts to 1-indexed.

use std::collections::VecDeque;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{bareiss_echelon, left_kernel_primitive, solve_exact_frac, ExactMatrix};
use crate::grid::{Layer, PointSet};
use crate::scalar::ExactInt;
use crate::{Int, Rational};

/// Undirected multigraph; parallel edges allowed, self-loops rejected.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (k, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(Error::Range(format!(
                    "edge {k} ({u}, {v}) has an endpoint outside 0..{vertices}"
                )));
            }
            if u == v {
                return Err(Error::Range(format!("edge {k} is a self-loop at vertex {u}")));
            }
        }
        Ok(MultiGraph { vertices, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The same graph read as a 2-uniform hypergraph.
    pub fn as_hypergraph(&self) -> Hypergraph {
        Hypergraph {
            vertices: self.vertices,
            edges: self.edges.iter().map(|&(u, v)| vec![u.min(v), u.max(v)]).collect(),
        }
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices];
        let mut out = Vec::new();
        for start in 0..self.vertices {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Hypergraph with nonempty hyperedges given as sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    vertices: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(vertices: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut clean = Vec::with_capacity(edges.len());
        for (k, mut e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return Err(Error::Range(format!("hyperedge {k} is empty")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= vertices) {
                return Err(Error::Range(format!("hyperedge {k} has vertex {v} outside 0..{vertices}")));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Range(format!("hyperedge {k} repeats a vertex")));
            }
            clean.push(e);
        }
        Ok(Hypergraph { vertices, edges: clean })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Vertex-by-edge 0/1 incidence matrix.
    pub fn incidence<T: ExactInt>(&self) -> ExactMatrix<T> {
        let mut a = ExactMatrix::zeros(self.vertices, self.edges.len());
        for (k, e) in self.edges.iter().enumerate() {
            for &v in e {
                a.set(v, k, T::one());
            }
        }
        a
    }
}

/// Hyperedges of `G(M)` with the layer each one comes from, in column order.
pub fn layer_hyperedges(m: &PointSet) -> Vec<(Layer, Vec<usize>)> {
    m.shape()
        .layers()
        .filter_map(|layer| {
            let members: Vec<usize> = m
                .points()
                .iter()
                .enumerate()
                .filter(|(_, p)| layer.contains(p))
                .map(|(i, _)| i)
                .collect();
            (!members.is_empty()).then_some((layer, members))
        })
        .collect()
}

/// `G(M)`: vertices are the points of `m` in canonical order, one hyperedge
/// per nonempty layer intersection.
pub fn hypergraph_from_set(m: &PointSet) -> Hypergraph {
    Hypergraph {
        vertices: m.len(),
        edges: layer_hyperedges(m).into_iter().map(|(_, e)| e).collect(),
    }
}

/// `G(M)` as a multigraph, for sets meeting every layer in 0 or 2 points.
pub fn graph_from_set(m: &PointSet) -> Result<MultiGraph> {
    crate::basis::check_two_or_zero(m)?;
    let edges = layer_hyperedges(m).into_iter().map(|(_, e)| (e[0], e[1])).collect();
    MultiGraph::new(m.len(), edges)
}

/// Indicator of the edges incident to `v`: its incidence row.
pub fn coboundary(h: &Hypergraph, v: usize) -> Result<Vec<u8>> {
    if v >= h.vertices {
        return Err(Error::Range(format!("vertex {v} outside 0..{}", h.vertices)));
    }
    Ok(h.edges.iter().map(|e| u8::from(e.binary_search(&v).is_ok())).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphVerdict {
    pub basic: bool,
    pub rank: usize,
    /// Primitive `λ` with `Σ λ_v δ_v = 0`, present iff non-basic.
    pub dependence: Option<Vec<Int>>,
}

impl HypergraphVerdict {
    pub fn verify(&self, h: &Hypergraph) -> bool {
        match (&self.dependence, self.basic) {
            (None, true) => crate::exactlin::rank_exact(&h.incidence::<Int>()) == h.vertices,
            (Some(lambda), false) => {
                lambda.iter().any(|x| !x.is_zero())
                    && h.incidence::<Int>().left_mul(lambda).is_ok_and(|s| s.iter().all(Zero::is_zero))
            }
            _ => false,
        }
    }
}

/// Rank test on the incidence matrix.
pub fn hypergraph_is_basic(h: &Hypergraph) -> HypergraphVerdict {
    let a = h.incidence::<Int>();
    let order: Vec<usize> = (0..a.cols()).collect();
    let rank = bareiss_echelon(a.to_rows(), &order).rank();
    if rank == h.vertices {
        return HypergraphVerdict { basic: true, rank, dependence: None };
    }
    let lambda = left_kernel_primitive(&a).vectors.into_iter().next();
    HypergraphVerdict { basic: false, rank, dependence: lambda }
}

/// `dim ker Ψ` where `Ψ(1_v) = δ_v`: vertex count minus incidence rank.
pub fn psi_kernel_dim(h: &Hypergraph) -> usize {
    h.vertices - crate::exactlin::rank_exact(&h.incidence::<Int>())
}

/// A bipartite connected component and its two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteComponent {
    pub part_a: Vec<usize>,
    pub part_b: Vec<usize>,
}

impl BipartiteComponent {
    /// `λ = +1` on `part_a`, `-1` on `part_b`, 0 elsewhere.
    pub fn dependence(&self, vertices: usize) -> Vec<Int> {
        let mut lambda = vec![Int::zero(); vertices];
        for &v in &self.part_a {
            lambda[v] = Int::from(1);
        }
        for &v in &self.part_b {
            lambda[v] = Int::from(-1);
        }
        lambda
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.part_a.iter().chain(&self.part_b).copied().collect();
        all.sort_unstable();
        all
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVerdict {
    pub basic: bool,
    /// First bipartite component (by smallest vertex), if any.
    pub bipartite: Option<BipartiteComponent>,
}

impl GraphVerdict {
    pub fn dependence(&self, g: &MultiGraph) -> Option<Vec<Int>> {
        self.bipartite.as_ref().map(|c| c.dependence(g.vertex_count()))
    }

    /// The ±1 vector really is a dependence among co-boundaries.
    pub fn verify(&self, g: &MultiGraph) -> bool {
        match &self.bipartite {
            None => self.basic && bipartite_components(g).is_empty(),
            Some(c) => {
                let lambda = c.dependence(g.vertex_count());
                !self.basic
                    && !c.part_a.is_empty()
                    && g.as_hypergraph()
                        .incidence::<Int>()
                        .left_mul(&lambda)
                        .is_ok_and(|s| s.iter().all(Zero::is_zero))
            }
        }
    }
}

/// Every bipartite component, each 2-colored from its smallest vertex.
pub fn bipartite_components(g: &MultiGraph) -> Vec<BipartiteComponent> {
    let adj = g.adjacency();
    let mut side = vec![u8::MAX; g.vertex_count()];
    let mut out = Vec::new();
    for comp in g.components() {
        let start = comp[0];
        side[start] = 0;
        let mut queue = VecDeque::from([start]);
        let mut odd_cycle = false;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    odd_cycle = true;
                }
            }
        }
        if !odd_cycle {
            let (a, b): (Vec<usize>, Vec<usize>) = comp.iter().partition(|&&v| side[v] == 0);
            out.push(BipartiteComponent { part_a: a, part_b: b });
        }
    }
    out
}

/// Basic iff no connected component is bipartite.
pub fn graph_is_basic(g: &MultiGraph) -> GraphVerdict {
    let bipartite = bipartite_components(g).into_iter().next();
    GraphVerdict { basic: bipartite.is_none(), bipartite }
}

/// Edge weights whose incidence sums give `vertex_weights`; free unknowns
/// are set to zero.
pub fn solve_edge_weights(g: &MultiGraph, vertex_weights: &[Rational]) -> Result<Vec<Rational>> {
    if vertex_weights.len() != g.vertex_count() {
        return Err(Error::Dimension(format!(
            "{} vertex weights for {} vertices",
            vertex_weights.len(),
            g.vertex_count()
        )));
    }
    if let Some(c) = bipartite_components(g).into_iter().next() {
        return Err(Error::BipartiteComponent(c.vertices()));
    }
    let a = g.as_hypergraph().incidence::<Int>();
    let x = solve_exact_frac(&a, vertex_weights)?;
    Ok(x.expect("a graph without bipartite components is basic"))
}

/// `Σ_{e ∋ v} w_E(e)` for every vertex.
pub fn vertex_sums(g: &MultiGraph, edge_weights: &[Rational]) -> Vec<Rational> {
    let mut sums = vec![Rational::zero(); g.vertex_count()];
    for (&(u, v), w) in g.edges().iter().zip(edge_weights) {
        sums[u] += w;
        sums[v] += w;
    }
    sums
}
