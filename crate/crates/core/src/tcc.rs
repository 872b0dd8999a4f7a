//! Torsos of 3-edge-connected components and gluing their decompositions
//! into a decomposition of the whole graph.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::{Layout, TreeCutDecomposition, Violation};
use crate::graph::{
    biconnected_blocks, quotient, three_ecc, EdgeId, GraphError, ImmersionModel, MultiGraph, Vertex, VertexPartition,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TccError {
    #[error("{0:?} is not a 3-edge-connected component")]
    NotA3ECC(Vec<Vertex>),
    #[error("no decomposition supplied for component {0:?}")]
    MissingComponent(Vec<Vertex>),
    #[error("decomposition of component {component:?} is invalid: {violations:?}")]
    InvalidInputDecomposition { component: Vec<Vertex>, violations: Vec<Violation> },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TorsoEdge {
    Original(EdgeId),
    /// Stands for the component `Z` of `G - A` (sorted vertices).
    Replacement { component: Vec<Vertex> },
}

/// `torso(A)`. Vertex `i` of `graph` is `vertices[i]` of `G`; the edges of
/// `G[A]` come first in id order, then one replacement edge per component of
/// `G - A` with exactly two neighbours in `A`, ordered by smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentTorso {
    pub vertices: Vec<Vertex>,
    pub graph: MultiGraph,
    pub edges: Vec<TorsoEdge>,
}

impl ComponentTorso {
    pub fn local(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }
}

/// Components of `G - A` as sorted vertex lists, ordered by smallest vertex.
fn outside_components(g: &MultiGraph, inside: &[bool]) -> Vec<Vec<Vertex>> {
    let mut seen = inside.to_vec();
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &(y, _) in g.incident(x) {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn check_block(g: &MultiGraph, a: &[Vertex]) -> Result<Vec<Vertex>, TccError> {
    let partition = three_ecc(g);
    let i = partition.find_block(a).ok_or_else(|| TccError::NotA3ECC(a.to_vec()))?;
    Ok(partition.blocks()[i].clone())
}

pub fn component_torso(g: &MultiGraph, a: &[Vertex]) -> Result<ComponentTorso, TccError> {
    let block = check_block(g, a)?;
    Ok(build_torso(g, &block).0)
}

/// The torso of `A` and, for every replacement edge, the pair of
/// attachments in `A` together with the component it replaces.
fn build_torso(g: &MultiGraph, block: &[Vertex]) -> (ComponentTorso, Vec<(Vertex, Vertex)>) {
    let mut inside = vec![false; g.vertex_count()];
    for &v in block {
        inside[v] = true;
    }
    let local = |v: Vertex| block.binary_search(&v).expect("vertex of A");
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        if inside[u] && inside[v] {
            edges.push((local(u), local(v)));
            labels.push(TorsoEdge::Original(id));
        }
    }
    let mut attachments = Vec::new();
    for z in outside_components(g, &inside) {
        let mut neighbours: Vec<Vertex> = z
            .iter()
            .flat_map(|&x| g.incident(x).iter().map(|&(y, _)| y))
            .filter(|&y| inside[y])
            .collect();
        neighbours.sort_unstable();
        neighbours.dedup();
        if let [x, y] = neighbours[..] {
            edges.push((local(x), local(y)));
            labels.push(TorsoEdge::Replacement { component: z });
            attachments.push((x, y));
        }
    }
    let graph = MultiGraph::new(block.len(), edges).expect("torso edges join distinct vertices of A");
    (ComponentTorso { vertices: block.to_vec(), graph, edges: labels }, attachments)
}

/// An immersion model of `torso(A)` in `G`: identity on `A` and on `G[A]`;
/// each replacement edge runs along a shortest path through its component.
pub fn torso_immersion_model(g: &MultiGraph, a: &[Vertex]) -> Result<ImmersionModel, TccError> {
    let block = check_block(g, a)?;
    let (torso, attachments) = build_torso(g, &block);
    Ok(model_for(g, &torso, &attachments))
}

pub(crate) fn torso_with_model(g: &MultiGraph, block: &[Vertex]) -> (ComponentTorso, ImmersionModel) {
    let (torso, attachments) = build_torso(g, block);
    let model = model_for(g, &torso, &attachments);
    (torso, model)
}

fn model_for(g: &MultiGraph, torso: &ComponentTorso, attachments: &[(Vertex, Vertex)]) -> ImmersionModel {
    let mut replacements = attachments.iter();
    let edge_paths = torso
        .edges
        .iter()
        .map(|label| match label {
            TorsoEdge::Original(id) => vec![*id],
            TorsoEdge::Replacement { component } => {
                let &(x, y) = replacements.next().expect("one attachment pair per replacement edge");
                path_through(g, component, x, y)
            }
        })
        .collect();
    ImmersionModel { vertex_map: torso.vertices.clone(), edge_paths }
}

/// Edge ids of a shortest `x`–`y` path whose inner vertices all lie in `z`.
fn path_through(g: &MultiGraph, z: &[Vertex], x: Vertex, y: Vertex) -> Vec<EdgeId> {
    let mut allowed = vec![false; g.vertex_count()];
    for &v in z {
        allowed[v] = true;
    }
    let mut via: Vec<Option<(Vertex, EdgeId)>> = vec![None; g.vertex_count()];
    let mut queue = VecDeque::from([x]);
    let mut reached = vec![false; g.vertex_count()];
    reached[x] = true;
    while let Some(p) = queue.pop_front() {
        if p == y {
            break;
        }
        for &(q, e) in g.incident(p) {
            if reached[q] || !(allowed[q] || (q == y && p != x)) {
                continue;
            }
            reached[q] = true;
            via[q] = Some((p, e));
            if q != y {
                queue.push_back(q);
            }
        }
    }
    let mut path = Vec::new();
    let mut at = y;
    while let Some((p, e)) = via[at] {
        path.push(e);
        at = p;
    }
    path.reverse();
    path
}

/// Diagnostics of a gluing: the quotient `G_3CC`, its spanning forest and
/// the tree edges created for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueReport {
    pub blocks: Vec<Vec<Vertex>>,
    pub quotient_edges: Vec<(usize, usize)>,
    /// Original edge of every quotient edge.
    pub alpha: Vec<EdgeId>,
    pub forest: Vec<usize>,
    pub non_forest: Vec<usize>,
    pub gamma: Vec<GammaEdge>,
    /// Tree edges added only to join pieces for different components of `G`.
    pub completion_edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaEdge {
    pub quotient_edge: usize,
    pub tree_edge: usize,
    /// The non-forest edge of the quotient cycle through this edge, if any.
    pub cycle_partner: Option<usize>,
}

/// Combines one decomposition per 3-edge-connected component (keyed by the
/// component's sorted vertex list, decomposing its torso in local indices)
/// into a decomposition of `G`.
pub fn glue(
    g: &MultiGraph,
    per_component: &BTreeMap<Vec<Vertex>, TreeCutDecomposition>,
) -> Result<(TreeCutDecomposition, GlueReport), TccError> {
    let partition = three_ecc(g);
    glue_with(g, &partition, |block| per_component.get(block).cloned())
}

pub(crate) fn glue_with(
    g: &MultiGraph,
    partition: &VertexPartition,
    mut decomposition_of: impl FnMut(&[Vertex]) -> Option<TreeCutDecomposition>,
) -> Result<(TreeCutDecomposition, GlueReport), TccError> {
    let q = quotient(g, partition)?;
    let blocks = partition.blocks();

    let mut bags: Vec<Vec<Vertex>> = Vec::new();
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    let mut offset = Vec::with_capacity(blocks.len());
    let mut node_of = vec![0; g.vertex_count()];
    for block in blocks {
        let d = decomposition_of(block).ok_or_else(|| TccError::MissingComponent(block.clone()))?;
        let torso = build_torso(g, block).0;
        let violations = d.validate(&torso.graph);
        if !violations.is_empty() {
            return Err(TccError::InvalidInputDecomposition { component: block.clone(), violations });
        }
        let base = bags.len();
        offset.push(base);
        for (t, bag) in d.bags().iter().enumerate() {
            let global: Vec<Vertex> = bag.iter().map(|&x| block[x]).collect();
            for &v in &global {
                node_of[v] = base + t;
            }
            bags.push(global);
        }
        tree_edges.extend(d.tree_edges().iter().map(|&(s, t)| (base + s, base + t)));
    }

    let mut order: Vec<usize> = (0..q.graph.edge_count()).collect();
    let key = |e: usize| {
        let (x, y) = q.graph.endpoints(e);
        (x.min(y), x.max(y), e)
    };
    order.sort_by_key(|&e| key(e));
    let mut root: Vec<usize> = (0..blocks.len()).collect();
    fn find(root: &mut [usize], mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    let mut in_forest = vec![false; q.graph.edge_count()];
    for &e in &order {
        let (x, y) = q.graph.endpoints(e);
        let (rx, ry) = (find(&mut root, x), find(&mut root, y));
        if rx != ry {
            root[rx] = ry;
            in_forest[e] = true;
        }
    }

    let mut partner = vec![None; q.graph.edge_count()];
    for cycle in biconnected_blocks(&q.graph).into_iter().filter(|b| b.len() >= 2) {
        let outside: Vec<usize> = cycle.iter().copied().filter(|&e| !in_forest[e]).collect();
        if let [r] = outside[..] {
            for &e in &cycle {
                if in_forest[e] {
                    partner[e] = Some(r);
                }
            }
        }
    }

    let mut gamma = Vec::new();
    for &e in &order {
        if in_forest[e] {
            let (u, v) = g.endpoints(q.edge_origin[e]);
            gamma.push(GammaEdge { quotient_edge: e, tree_edge: tree_edges.len(), cycle_partner: partner[e] });
            tree_edges.push((node_of[u], node_of[v]));
        }
    }

    let mut completion_edges = Vec::new();
    let mut first_root: Option<usize> = None;
    for b in 0..blocks.len() {
        if find(&mut root, b) != b {
            continue;
        }
        // b is the representative of a forest piece; attach its smallest block
        let smallest = (0..blocks.len()).find(|&c| find(&mut root, c) == b).expect("piece is nonempty");
        match first_root {
            None => first_root = Some(offset[smallest]),
            Some(r) => {
                completion_edges.push(tree_edges.len());
                tree_edges.push((r, offset[smallest]));
            }
        }
    }

    let report = GlueReport {
        blocks: blocks.to_vec(),
        quotient_edges: q.graph.edges().to_vec(),
        alpha: q.edge_origin.clone(),
        forest: (0..q.graph.edge_count()).filter(|&e| in_forest[e]).collect(),
        non_forest: (0..q.graph.edge_count()).filter(|&e| !in_forest[e]).collect(),
        gamma,
        completion_edges,
    };
    let glued = TreeCutDecomposition::new(bags, tree_edges);
    debug_assert!(Layout::new(g, &glued).is_ok());
    Ok((glued, report))
}
