//! Loop-free multigraphs with stable edge identities.
//!
//! Vertices are `0..n` and edge ids are `0..m` in insertion order; parallel
//! edges are distinct entries. The text and JSON formats in [`crate::io`]
//! translate to 1-based vertices on the wire.

mod cactus;
mod connectivity;
mod flow;
mod immersion;
pub mod named;
mod wall;

use thiserror::Error;

use crate::vertex_set::VertexSet;

pub use cactus::{biconnected_blocks, is_cactus};
pub use connectivity::{quotient, three_ecc, Quotient, VertexPartition};
pub use flow::max_edge_disjoint_paths;
pub(crate) use flow::edge_disjoint_paths_capped;
pub use immersion::{verify_immersion_model, ImmersionCheck, ImmersionModel, ImmersionViolation};
pub use wall::wall;

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("edge {edge} is a loop at vertex {vertex}")]
    LoopEdge { edge: usize, vertex: Vertex },
    #[error("edge {edge} has endpoint {vertex} outside the vertex range 0..{n}")]
    BadEndpoint { edge: usize, vertex: Vertex, n: usize },
    #[error("unknown vertex {0}")]
    BadVertex(Vertex),
    #[error("unknown edge {0}")]
    BadEdge(EdgeId),
    #[error("u and v must differ (both are {0})")]
    SameVertex(Vertex),
    #[error("sides do not form a two-sided near-partition of the vertex set")]
    InvalidSeparation,
    #[error("blocks do not partition the vertex set: {0}")]
    InvalidPartition(String),
    #[error("malformed immersion model: {0}")]
    MalformedModel(String),
    #[error("graph has {n} vertices; this operation supports at most {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// A finite loop-free multigraph. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adjacency: Vec<Vec<(Vertex, EdgeId)>>,
}

impl MultiGraph {
    /// Builds a graph on vertices `0..n`; edge `i` is `edges[i]`.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let edges: Vec<_> = edges.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::BadEndpoint { edge: id, vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge { edge: id, vertex: u });
            }
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        Ok(MultiGraph { n, edges, adjacency })
    }

    /// A graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        Self::new(n, std::iter::empty())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// `(neighbour, edge)` pairs in edge-id order.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        v < self.n
    }

    /// Returns an error unless the graph fits a [`VertexSet`].
    pub fn check_small(&self) -> Result<(), GraphError> {
        if self.n > VertexSet::CAPACITY {
            Err(GraphError::TooLarge { n: self.n, limit: VertexSet::CAPACITY })
        } else {
            Ok(())
        }
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// `δ(X)`: edges with exactly one endpoint in `X`, ascending.
    pub fn boundary<I>(&self, set: I) -> Result<Vec<EdgeId>, GraphError>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut inside = vec![false; self.n];
        for v in set {
            if v >= self.n {
                return Err(GraphError::BadVertex(v));
            }
            inside[v] = true;
        }
        Ok(self.crossing(|v| inside[v]))
    }

    /// `δ(X)` for a bitset side.
    pub fn boundary_of(&self, set: VertexSet) -> Vec<EdgeId> {
        self.crossing(|v| set.contains(v))
    }

    pub fn boundary_size(&self, set: VertexSet) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| set.contains(u) != set.contains(v))
            .count()
    }

    fn crossing(&self, inside: impl Fn(Vertex) -> bool) -> Vec<EdgeId> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| inside(u) != inside(v))
            .map(|(id, _)| id)
            .collect()
    }

    /// Vertices reachable from `start` without using edges flagged in `blocked`.
    pub fn reachable(&self, start: Vertex, blocked: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(y, e) in &self.adjacency[x] {
                if !seen[y] && !blocked.get(e).copied().unwrap_or(false) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Connected component index of every vertex, numbered by smallest member.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &(y, _) in &self.adjacency[x] {
                    if label[y] == usize::MAX {
                        label[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.reachable(0, &[]).iter().all(|&r| r)
    }

    /// Subgraph induced on `vertices` (relabelled in the given order), with the
    /// original id of each kept edge.
    pub fn induced(&self, vertices: &[Vertex]) -> Result<(MultiGraph, Vec<EdgeId>), GraphError> {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(GraphError::BadVertex(v));
            }
            local[v] = i;
        }
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if local[u] != usize::MAX && local[v] != usize::MAX {
                edges.push((local[u], local[v]));
                origin.push(id);
            }
        }
        Ok((MultiGraph::new(vertices.len(), edges)?, origin))
    }
}

/// An unordered two-sided near-partition `{A, B}` of the vertex set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Separation {
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparationKind {
    Thin,
    Bold,
}

impl Separation {
    pub fn new(g: &MultiGraph, side_a: VertexSet, side_b: VertexSet) -> Result<Self, GraphError> {
        g.check_small()?;
        if !side_a.is_disjoint(side_b) || side_a.union(side_b) != g.all_vertices() {
            return Err(GraphError::InvalidSeparation);
        }
        Ok(Separation { side_a, side_b })
    }

    /// The separation `{A, V \ A}`.
    pub fn from_side(g: &MultiGraph, side_a: VertexSet) -> Result<Self, GraphError> {
        g.check_small()?;
        let all = g.all_vertices();
        if !side_a.is_subset(all) {
            return Err(GraphError::InvalidSeparation);
        }
        Ok(Separation { side_a, side_b: all.difference(side_a) })
    }

    pub fn order(&self, g: &MultiGraph) -> usize {
        g.boundary_size(self.side_a)
    }
}

/// Order of `S` and whether it is thin (order ≤ 2) or bold.
pub fn classify_separation(
    g: &MultiGraph,
    s: &Separation,
) -> Result<(usize, SeparationKind), GraphError> {
    let checked = Separation::new(g, s.side_a, s.side_b)?;
    let order = checked.order(g);
    let kind = if order <= 2 { SeparationKind::Thin } else { SeparationKind::Bold };
    Ok((order, kind))
}

#[cfg(test)]
pub(crate) mod fixtures {
    pub use super::named::*;
}
