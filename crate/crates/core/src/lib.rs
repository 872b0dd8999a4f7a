//! Tree-cut decompositions of multigraphs, their adhesion and bag widths,
//! the dual certificates (brambles and tangles), an exact solver for small
//! graphs, and the cops, dogs and robber game.

pub mod certificates;
pub mod decomposition;
pub mod game;
pub mod graph;
pub mod io;
pub mod solver;
pub mod sweep;
pub mod tcc;
pub mod vertex_set;

pub use decomposition::{TreeCutDecomposition, WidthReport};
pub use graph::{EdgeId, GraphError, MultiGraph, Vertex};
pub use vertex_set::VertexSet;
