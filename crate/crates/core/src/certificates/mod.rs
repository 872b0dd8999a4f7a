//! Brambles and tangles, the two obstructions to decompositions of small
//! adhesion-width and bag-width.

mod bramble;
mod refute;
mod tangle;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::DecompositionError;
use crate::graph::{EdgeId, GraphError, Vertex};
use crate::vertex_set::VertexSet;

pub use bramble::{bramble_orders, bramble_to_tangle, verify_bramble, AdhesionOrder, BrambleOrders, BrambleViolation};
pub(crate) use bramble::disconnects;
pub use refute::{refute_decomposition, SinkStar};
pub use tangle::{
    enumerate_separations, find_tangle, find_tangle_with_limit, is_sigma_star, vertex_tangle, verify_tangle,
    TangleViolation, DEFAULT_SEPARATION_LIMIT,
};

/// An oriented separation `(from, to)`; it points toward `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedSeparation {
    pub from: VertexSet,
    pub to: VertexSet,
}

impl OrientedSeparation {
    pub fn reversed(self) -> Self {
        OrientedSeparation { from: self.to, to: self.from }
    }
}

/// A slab `(H, K)`: a connected subgraph `H` of `G` given by its vertices
/// and edge ids, and a core `K ⊆ V(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slab {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
    pub core: Vec<Vertex>,
}

impl Slab {
    pub fn new(mut vertices: Vec<Vertex>, mut edges: Vec<EdgeId>, mut core: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        edges.sort_unstable();
        edges.dedup();
        core.sort_unstable();
        core.dedup();
        Slab { vertices, edges, core }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bramble {
    pub slabs: Vec<Slab>,
}

/// An orientation of every separation of order `< a`, claimed to be an
/// `(a, b)`-tangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tangle {
    pub a: usize,
    pub b: usize,
    pub oriented: Vec<OrientedSeparation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("{separations} separations exceed the search limit of {limit}")]
    BudgetExceeded { separations: usize, limit: usize },
    #[error("bramble orders ({adhesion:?}, {bag}) do not reach the requested ({a}, {b})")]
    InsufficientOrders { adhesion: AdhesionOrder, bag: usize, a: usize, b: usize },
    #[error("certificate is internally inconsistent: {0}")]
    CertificateCorrupt(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid bramble: {0:?}")]
    InvalidBramble(BrambleViolation),
    #[error("invalid tangle: {0:?}")]
    InvalidTangle(TangleViolation),
    #[error("the decomposition has a single node, so its incident star is empty")]
    DegenerateStar,
    #[error("tree edge {tree_edge} induces a separation of order {order}, outside the tangle's range")]
    SeparationOutsideTangle { tree_edge: usize, order: usize },
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
