//! Tree-cut decompositions: a tree whose nodes carry bags forming a
//! near-partition of `V(G)`.

mod transform;
mod widths;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, GraphError, MultiGraph, Vertex};

pub use transform::{induce_on_immersion, simplify};
pub(crate) use widths::{ab_widths, edge_adhesions, node_adhesion, report};
pub use widths::{
    adhesion_of_node, adhesion_of_tree_edge, measure_widths, three_center, three_center_shuffled, torso,
    ThreeCenter, Torso, TorsoVertex, WidthReport,
};

pub type NodeId = usize;

/// A tree on nodes `0..bags.len()` with one bag per node. Bags are kept
/// sorted; tree edges keep their input order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreeCutDecomposition {
    bags: Vec<Vec<Vertex>>,
    tree_edges: Vec<(NodeId, NodeId)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("the tree has no nodes")]
    EmptyTree,
    #[error("tree edge {index} mentions node {node}, but there are only {nodes} nodes")]
    TreeEdgeOutOfRange { index: usize, node: NodeId, nodes: usize },
    #[error("tree edge {index} is a loop at node {node}")]
    SelfLoop { index: usize, node: NodeId },
    #[error("the tree has {nodes} nodes and {edges} edges and is not connected and acyclic")]
    NotATree { nodes: usize, edges: usize },
    #[error("bag of node {node} contains unknown vertex {vertex}")]
    VertexOutOfRange { node: NodeId, vertex: Vertex },
    #[error("vertex {vertex} lies in the bags of nodes {first} and {second}")]
    VertexInTwoBags { vertex: Vertex, first: NodeId, second: NodeId },
    #[error("vertex {0} lies in no bag")]
    VertexMissing(Vertex),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("invalid decomposition: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("unknown tree node {0}")]
    UnknownNode(NodeId),
    #[error("{0}-{1} is not a tree edge")]
    UnknownTreeEdge(NodeId, NodeId),
    #[error("vertex {0} lies in no bag")]
    VertexNotInBags(Vertex),
    #[error("immersion model is not valid: {0}")]
    InvalidModel(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl TreeCutDecomposition {
    pub fn new(bags: Vec<Vec<Vertex>>, tree_edges: Vec<(NodeId, NodeId)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        TreeCutDecomposition { bags, tree_edges }
    }

    /// One node holding every vertex.
    pub fn single_bag(g: &MultiGraph) -> Self {
        TreeCutDecomposition { bags: vec![g.vertices().collect()], tree_edges: Vec::new() }
    }

    /// For a graph that is itself a tree: one singleton bag per vertex, tree
    /// edges copied from the graph.
    pub fn identity(g: &MultiGraph) -> Self {
        TreeCutDecomposition {
            bags: g.vertices().map(|v| vec![v]).collect(),
            tree_edges: g.edges().to_vec(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn bag(&self, t: NodeId) -> &[Vertex] {
        &self.bags[t]
    }

    pub fn tree_edges(&self) -> &[(NodeId, NodeId)] {
        &self.tree_edges
    }

    /// Every violated condition of the definition, in a fixed order.
    pub fn validate(&self, g: &MultiGraph) -> Vec<Violation> {
        let mut out = Vec::new();
        let nodes = self.bags.len();
        if nodes == 0 {
            out.push(Violation::EmptyTree);
        }
        let mut tree_ok = true;
        for (index, &(s, t)) in self.tree_edges.iter().enumerate() {
            for node in [s, t] {
                if node >= nodes {
                    out.push(Violation::TreeEdgeOutOfRange { index, node, nodes });
                    tree_ok = false;
                }
            }
            if s == t {
                out.push(Violation::SelfLoop { index, node: s });
                tree_ok = false;
            }
        }
        if tree_ok && nodes > 0 && !is_tree(nodes, &self.tree_edges) {
            out.push(Violation::NotATree { nodes, edges: self.tree_edges.len() });
        }
        let mut owner = vec![usize::MAX; g.vertex_count()];
        for (node, bag) in self.bags.iter().enumerate() {
            for &vertex in bag {
                if vertex >= g.vertex_count() {
                    out.push(Violation::VertexOutOfRange { node, vertex });
                } else if owner[vertex] != usize::MAX {
                    out.push(Violation::VertexInTwoBags { vertex, first: owner[vertex], second: node });
                } else {
                    owner[vertex] = node;
                }
            }
        }
        for (v, &o) in owner.iter().enumerate() {
            if o == usize::MAX {
                out.push(Violation::VertexMissing(v));
            }
        }
        out
    }

    pub fn is_valid(&self, g: &MultiGraph) -> bool {
        self.validate(g).is_empty()
    }

    /// The node whose bag holds `v`.
    pub fn node_of(&self, v: Vertex) -> Option<NodeId> {
        self.bags.iter().position(|b| b.binary_search(&v).is_ok())
    }

    /// Tree path from the node holding `u` to the node holding `v`.
    pub fn trace(&self, g: &MultiGraph, u: Vertex, v: Vertex) -> Result<Vec<NodeId>, DecompositionError> {
        let layout = Layout::new(g, self)?;
        for w in [u, v] {
            if !g.has_vertex(w) {
                return Err(GraphError::BadVertex(w).into());
            }
        }
        Ok(layout.path(layout.node_of[u], layout.node_of[v]))
    }
}

fn is_tree(nodes: usize, edges: &[(NodeId, NodeId)]) -> bool {
    if edges.len() + 1 != nodes {
        return false;
    }
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    edges.iter().all(|&(s, t)| {
        let (rs, rt) = (find(&mut parent, s), find(&mut parent, t));
        parent[rs] = rt;
        rs != rt
    })
}

/// A validated decomposition rooted at node 0, with Euler intervals so that
/// subtree membership is a range test.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub node_of: Vec<NodeId>,
    /// `(neighbour, tree edge index)` per node.
    pub adjacency: Vec<Vec<(NodeId, usize)>>,
    pub parent: Vec<Option<NodeId>>,
    /// For tree edge `i`, the endpoint farther from the root.
    pub child_of_edge: Vec<NodeId>,
    pub depth: Vec<usize>,
    tin: Vec<usize>,
    tout: Vec<usize>,
}

impl Layout {
    pub fn new(g: &MultiGraph, d: &TreeCutDecomposition) -> Result<Self, DecompositionError> {
        let violations = d.validate(g);
        if !violations.is_empty() {
            return Err(DecompositionError::Invalid(violations));
        }
        Ok(Self::new_unchecked(g, d))
    }

    pub fn new_unchecked(g: &MultiGraph, d: &TreeCutDecomposition) -> Self {
        let nodes = d.node_count();
        let mut node_of = vec![0; g.vertex_count()];
        for (t, bag) in d.bags.iter().enumerate() {
            for &v in bag {
                node_of[v] = t;
            }
        }
        let mut adjacency = vec![Vec::new(); nodes];
        for (i, &(s, t)) in d.tree_edges.iter().enumerate() {
            adjacency[s].push((t, i));
            adjacency[t].push((s, i));
        }
        let mut parent = vec![None; nodes];
        let mut child_of_edge = vec![0; d.tree_edges.len()];
        let mut depth = vec![0; nodes];
        let mut tin = vec![0; nodes];
        let mut tout = vec![0; nodes];
        let mut clock = 0;
        let mut stack = vec![(0usize, 0usize)];
        tin[0] = clock;
        clock += 1;
        while let Some(&mut (x, ref mut next)) = stack.last_mut() {
            if let Some(&(y, e)) = adjacency[x].get(*next) {
                *next += 1;
                if y == 0 || parent[y].is_some() {
                    continue;
                }
                parent[y] = Some(x);
                child_of_edge[e] = y;
                depth[y] = depth[x] + 1;
                tin[y] = clock;
                clock += 1;
                stack.push((y, 0));
            } else {
                tout[x] = clock;
                stack.pop();
            }
        }
        Layout { node_of, adjacency, parent, child_of_edge, depth, tin, tout }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Whether node `x` lies in the subtree rooted at `root`.
    pub fn in_subtree(&self, root: NodeId, x: NodeId) -> bool {
        self.tin[root] <= self.tin[x] && self.tin[x] < self.tout[root]
    }

    /// Whether the trace of graph edge `(u, v)` uses tree edge `e`.
    pub fn crosses(&self, e: usize, u: Vertex, v: Vertex) -> bool {
        let c = self.child_of_edge[e];
        self.in_subtree(c, self.node_of[u]) != self.in_subtree(c, self.node_of[v])
    }

    pub fn adhesion(&self, g: &MultiGraph, e: usize) -> Vec<EdgeId> {
        g.edges()
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| self.crosses(e, u, v))
            .map(|(id, _)| id)
            .collect()
    }

    pub fn path(&self, mut s: NodeId, mut t: NodeId) -> Vec<NodeId> {
        let mut front = Vec::new();
        let mut back = Vec::new();
        while s != t {
            if self.depth[s] >= self.depth[t] {
                front.push(s);
                s = self.parent[s].expect("non-root node has a parent");
            } else {
                back.push(t);
                t = self.parent[t].expect("non-root node has a parent");
            }
        }
        front.push(s);
        front.extend(back.into_iter().rev());
        front
    }

    /// The tree edge index joining `s` and `t`, if they are adjacent.
    pub fn edge_between(&self, s: NodeId, t: NodeId) -> Option<usize> {
        self.adjacency.get(s)?.iter().find(|&&(y, _)| y == t).map(|&(_, e)| e)
    }
}
