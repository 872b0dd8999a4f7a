use serde::Serialize;

use super::flow::edge_disjoint_paths_capped;
use super::{EdgeId, GraphError, MultiGraph, Vertex};

/// A partition of `V(G)` into nonempty blocks. Blocks are sorted ascending
/// and ordered by their smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct VertexPartition {
    blocks: Vec<Vec<Vertex>>,
    #[serde(skip)]
    block_of: Vec<usize>,
}

impl VertexPartition {
    pub fn new(n: usize, blocks: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<Vertex>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(GraphError::InvalidPartition("empty block".into()));
            }
            for &v in block {
                if v >= n {
                    return Err(GraphError::InvalidPartition(format!("vertex {v} out of range")));
                }
                if block_of[v] != usize::MAX {
                    return Err(GraphError::InvalidPartition(format!("vertex {v} in two blocks")));
                }
                block_of[v] = i;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(GraphError::InvalidPartition(format!("vertex {v} not covered")));
        }
        Ok(VertexPartition { blocks, block_of })
    }

    pub fn singletons(n: usize) -> Self {
        VertexPartition { blocks: (0..n).map(|v| vec![v]).collect(), block_of: (0..n).collect() }
    }

    /// Groups vertices by label; blocks come out ordered by smallest member.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut index = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<Vertex>> = Vec::new();
        let mut block_of = vec![0; labels.len()];
        for (v, l) in labels.iter().enumerate() {
            let i = *index.entry(*l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[i].push(v);
            block_of[v] = i;
        }
        VertexPartition { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, v: Vertex) -> usize {
        self.block_of[v]
    }

    pub fn same_block(&self, u: Vertex, v: Vertex) -> bool {
        self.block_of[u] == self.block_of[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.block_of.len()
    }

    /// Index of the block equal to `set` (as a set), if any.
    pub fn find_block(&self, set: &[Vertex]) -> Option<usize> {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.blocks.iter().position(|b| *b == sorted)
    }
}

/// The 3-edge-connected components: `u` and `v` share a block iff there are
/// three edge-disjoint `u`–`v` paths.
pub fn three_ecc(g: &MultiGraph) -> VertexPartition {
    let mut representatives: Vec<Vertex> = Vec::new();
    let mut label = vec![0; g.vertex_count()];
    let component = g.component_labels();
    for v in g.vertices() {
        let joined = representatives.iter().position(|&r| {
            component[r] == component[v] && edge_disjoint_paths_capped(g, r, v, 3) >= 3
        });
        label[v] = match joined {
            Some(i) => i,
            None => {
                representatives.push(v);
                representatives.len() - 1
            }
        };
    }
    VertexPartition::from_labels(&label)
}

/// `G/P` together with the origin map from quotient edges to edges of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub graph: MultiGraph,
    pub edge_origin: Vec<EdgeId>,
}

/// One vertex per block; one edge per edge of `G` between different blocks.
pub fn quotient(g: &MultiGraph, partition: &VertexPartition) -> Result<Quotient, GraphError> {
    if partition.vertex_count() != g.vertex_count() {
        return Err(GraphError::InvalidPartition(format!(
            "partition covers {} vertices, graph has {}",
            partition.vertex_count(),
            g.vertex_count()
        )));
    }
    let mut edges = Vec::new();
    let mut edge_origin = Vec::new();
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        let (bu, bv) = (partition.block_of(u), partition.block_of(v));
        if bu != bv {
            edges.push((bu, bv));
            edge_origin.push(id);
        }
    }
    Ok(Quotient { graph: MultiGraph::new(partition.block_count(), edges)?, edge_origin })
}
