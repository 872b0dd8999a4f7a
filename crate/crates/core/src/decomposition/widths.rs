use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{DecompositionError, Layout, NodeId, TreeCutDecomposition};
use crate::graph::{EdgeId, MultiGraph, Vertex};

/// The four width measures of a single decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WidthReport {
    pub wollan: usize,
    pub gprtw: usize,
    pub adhesion_width: usize,
    pub bag_width: usize,
}

/// What a torso vertex stands for: a vertex of the node's own bag, or the
/// contracted component of `T - t` entered through the given neighbour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TorsoVertex {
    Bag(Vertex),
    Branch(NodeId),
}

/// The torso `G_t`. Bag vertices come first (ascending), then one vertex per
/// nonempty branch in neighbour order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torso {
    pub graph: MultiGraph,
    pub vertices: Vec<TorsoVertex>,
    pub edge_origin: Vec<EdgeId>,
}

/// The 3-center of a torso. It may be empty, so it is kept as a plain vertex
/// list with edges given by positions in that list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeCenter {
    pub vertices: Vec<TorsoVertex>,
    pub edges: Vec<(usize, usize)>,
}

impl ThreeCenter {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Edges as sorted label pairs, sorted; handy for comparing results.
    pub fn labelled_edges(&self) -> Vec<(TorsoVertex, TorsoVertex)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|&(x, y)| {
                let (a, b) = (self.vertices[x], self.vertices[y]);
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

pub fn adhesion_of_tree_edge(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    (s, t): (NodeId, NodeId),
) -> Result<Vec<EdgeId>, DecompositionError> {
    let layout = Layout::new(g, d)?;
    let e = layout.edge_between(s, t).ok_or(DecompositionError::UnknownTreeEdge(s, t))?;
    Ok(layout.adhesion(g, e))
}

pub fn adhesion_of_node(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    t: NodeId,
) -> Result<Vec<EdgeId>, DecompositionError> {
    let layout = Layout::new(g, d)?;
    if t >= d.node_count() {
        return Err(DecompositionError::UnknownNode(t));
    }
    let adhesions = edge_adhesions(g, &layout);
    Ok(node_adhesion(&layout, &adhesions, t))
}

pub(crate) fn edge_adhesions(g: &MultiGraph, layout: &Layout) -> Vec<Vec<EdgeId>> {
    (0..layout.child_of_edge.len()).map(|e| layout.adhesion(g, e)).collect()
}

pub(crate) fn node_adhesion(layout: &Layout, adhesions: &[Vec<EdgeId>], t: NodeId) -> Vec<EdgeId> {
    let mut out: Vec<EdgeId> = layout.adjacency[t]
        .iter()
        .filter(|&&(_, e)| adhesions[e].len() >= 3)
        .flat_map(|&(_, e)| adhesions[e].iter().copied())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn torso(g: &MultiGraph, d: &TreeCutDecomposition, t: NodeId) -> Result<Torso, DecompositionError> {
    let layout = Layout::new(g, d)?;
    if t >= d.node_count() {
        return Err(DecompositionError::UnknownNode(t));
    }
    Ok(build_torso(g, d, &layout, t))
}

/// For every node, the neighbour of `t` through which it is reached
/// (`t` itself maps to `t`).
fn branch_labels(layout: &Layout, t: NodeId) -> Vec<NodeId> {
    let mut label = vec![usize::MAX; layout.node_count()];
    label[t] = t;
    let mut stack = Vec::new();
    for &(s, _) in &layout.adjacency[t] {
        label[s] = s;
        stack.push(s);
    }
    while let Some(x) = stack.pop() {
        for &(y, _) in &layout.adjacency[x] {
            if label[y] == usize::MAX {
                label[y] = label[x];
                stack.push(y);
            }
        }
    }
    label
}

fn build_torso(g: &MultiGraph, d: &TreeCutDecomposition, layout: &Layout, t: NodeId) -> Torso {
    let label = branch_labels(layout, t);
    let mut vertices: Vec<TorsoVertex> = d.bag(t).iter().map(|&v| TorsoVertex::Bag(v)).collect();
    let mut branch_index = vec![usize::MAX; layout.node_count()];
    for &(s, _) in &layout.adjacency[t] {
        let occupied = g.vertices().any(|v| label[layout.node_of[v]] == s);
        if occupied {
            branch_index[s] = vertices.len();
            vertices.push(TorsoVertex::Branch(s));
        }
    }
    let bag_index = |v: Vertex| d.bag(t).binary_search(&v).expect("vertex lies in the bag");
    let class = |v: Vertex| {
        let x = layout.node_of[v];
        if x == t {
            bag_index(v)
        } else {
            branch_index[label[x]]
        }
    };
    let mut edges = Vec::new();
    let mut edge_origin = Vec::new();
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        let (cu, cv) = (class(u), class(v));
        if cu != cv {
            edges.push((cu, cv));
            edge_origin.push(id);
        }
    }
    let graph = MultiGraph::new(vertices.len(), edges).expect("torso of a nonempty graph is nonempty");
    Torso { graph, vertices, edge_origin }
}

pub fn three_center(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    t: NodeId,
) -> Result<ThreeCenter, DecompositionError> {
    let torso = torso(g, d, t)?;
    Ok(suppress(&torso, d.bag(t).len(), |_| 0))
}

/// Same as [`three_center`], but each step suppresses a uniformly random
/// eligible vertex instead of the smallest one.
pub fn three_center_shuffled<R: Rng>(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    t: NodeId,
    rng: &mut R,
) -> Result<ThreeCenter, DecompositionError> {
    let torso = torso(g, d, t)?;
    Ok(suppress(&torso, d.bag(t).len(), |candidates| rng.gen_range(0..candidates.len())))
}

/// Repeatedly removes a non-bag vertex of degree at most 2, splicing its two
/// neighbours together when they are distinct. `pick` chooses among the
/// eligible vertices, given in ascending order.
fn suppress(torso: &Torso, bag_count: usize, mut pick: impl FnMut(&[usize]) -> usize) -> ThreeCenter {
    let n = torso.graph.vertex_count();
    let mut edges: Vec<Option<(usize, usize)>> = torso.graph.edges().iter().map(|&e| Some(e)).collect();
    let mut incident: Vec<Vec<usize>> = (0..n).map(|v| torso.graph.incident(v).iter().map(|&(_, e)| e).collect()).collect();
    let mut alive = vec![true; n];
    loop {
        for list in incident.iter_mut() {
            list.retain(|&e| edges[e].is_some());
        }
        let candidates: Vec<usize> =
            (bag_count..n).filter(|&v| alive[v] && incident[v].len() <= 2).collect();
        if candidates.is_empty() {
            break;
        }
        let x = candidates[pick(&candidates)];
        let neighbours: Vec<usize> = incident[x]
            .iter()
            .map(|&e| {
                let (a, b) = edges[e].expect("live edge");
                if a == x {
                    b
                } else {
                    a
                }
            })
            .collect();
        for &e in &incident[x] {
            edges[e] = None;
        }
        alive[x] = false;
        if let [y, z] = neighbours[..] {
            if y != z {
                edges.push(Some((y, z)));
                incident[y].push(edges.len() - 1);
                incident[z].push(edges.len() - 1);
            }
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut vertices = Vec::new();
    for v in 0..n {
        if alive[v] {
            index[v] = vertices.len();
            vertices.push(torso.vertices[v]);
        }
    }
    let edges = edges.into_iter().flatten().map(|(a, b)| (index[a], index[b])).collect();
    ThreeCenter { vertices, edges }
}

pub fn measure_widths(g: &MultiGraph, d: &TreeCutDecomposition) -> Result<WidthReport, DecompositionError> {
    let layout = Layout::new(g, d)?;
    Ok(report(g, d, &layout))
}

pub(crate) fn report(g: &MultiGraph, d: &TreeCutDecomposition, layout: &Layout) -> WidthReport {
    let adhesions = edge_adhesions(g, layout);
    let max_edge = adhesions.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = WidthReport { wollan: max_edge, gprtw: max_edge, adhesion_width: 0, bag_width: 0 };
    for t in 0..d.node_count() {
        let bag = d.bag(t).len();
        let bold = layout.adjacency[t].iter().filter(|&&(_, e)| adhesions[e].len() >= 3).count();
        let center = suppress(&build_torso(g, d, layout, t), bag, |_| 0);
        out.wollan = out.wollan.max(center.vertex_count());
        out.gprtw = out.gprtw.max(bag + bold);
        out.adhesion_width = out.adhesion_width.max(node_adhesion(layout, &adhesions, t).len());
        out.bag_width = out.bag_width.max(bag);
    }
    out
}

/// Adhesion-width and bag-width only, skipping torsos.
pub(crate) fn ab_widths(g: &MultiGraph, d: &TreeCutDecomposition, layout: &Layout) -> (usize, usize) {
    let adhesions = edge_adhesions(g, layout);
    (0..d.node_count()).fold((0, 0), |(a, b), t| {
        (a.max(node_adhesion(layout, &adhesions, t).len()), b.max(d.bag(t).len()))
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::super::fixtures::*;
    use super::*;
    use crate::graph::named::*;

    /// Edges of `g` crossing the vertex bipartition obtained by deleting the
    /// tree edge, computed from scratch by flood fill on the tree.
    fn crossing_oracle(g: &MultiGraph, d: &TreeCutDecomposition, (s, t): (NodeId, NodeId)) -> Vec<EdgeId> {
        let mut side = vec![false; d.node_count()];
        side[s] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for &(x, y) in d.tree_edges() {
                if (x, y) == (s, t) || (x, y) == (t, s) {
                    continue;
                }
                if side[x] != side[y] {
                    side[x] = true;
                    side[y] = true;
                    changed = true;
                }
            }
        }
        let inside: Vec<Vertex> = g.vertices().filter(|&v| side[d.node_of(v).unwrap()]).collect();
        g.boundary(inside).unwrap()
    }

    #[test]
    fn parallel_edges_all_in_adhesion() {
        let g = parallel(3);
        let d = TreeCutDecomposition::new(vec![vec![0], vec![1]], vec![(0, 1)]);
        assert_eq!(adhesion_of_tree_edge(&g, &d, (0, 1)).unwrap(), vec![0, 1, 2]);
        assert_eq!(adhesion_of_tree_edge(&g, &d, (1, 0)).unwrap(), vec![0, 1, 2]);
        assert_eq!(
            adhesion_of_tree_edge(&g, &d, (0, 0)),
            Err(DecompositionError::UnknownTreeEdge(0, 0))
        );
    }

    #[test]
    fn identity_decomposition_of_tree_has_unit_adhesions() {
        let g = binary_tree_15();
        let d = TreeCutDecomposition::identity(&g);
        for (i, &st) in d.tree_edges().iter().enumerate() {
            assert_eq!(adhesion_of_tree_edge(&g, &d, st).unwrap(), vec![i]);
            assert_eq!(crossing_oracle(&g, &d, st), vec![i]);
        }
        for t in 0..15 {
            assert!(adhesion_of_node(&g, &d, t).unwrap().is_empty());
        }
    }

    #[test]
    fn star_adhesions_match_oracle() {
        let g = binary_tree_15();
        let d = binary_tree_star();
        for &st in d.tree_edges() {
            assert_eq!(adhesion_of_tree_edge(&g, &d, st).unwrap(), crossing_oracle(&g, &d, st));
        }
        // vertex 4 is internal: parent 1, children 9 and 10
        assert_eq!(adhesion_of_tree_edge(&g, &d, (0, 4)).unwrap(), g.boundary([4]).unwrap());
        assert_eq!(adhesion_of_node(&g, &d, 0).unwrap(), (0..14).collect::<Vec<_>>());
        assert_eq!(adhesion_of_node(&g, &d, 99), Err(DecompositionError::UnknownNode(99)));
    }

    #[test]
    fn torso_examples() {
        let g = complete(4);
        let single = TreeCutDecomposition::single_bag(&g);
        assert_eq!(torso(&g, &single, 0).unwrap().graph, g);

        let d = TreeCutDecomposition::new(vec![vec![0, 1, 2], vec![3]], vec![(0, 1)]);
        let t = torso(&g, &d, 0).unwrap();
        assert_eq!(t.graph, g);
        assert_eq!(t.vertices[3], TorsoVertex::Branch(1));

        let bt = binary_tree_15();
        let t = torso(&bt, &binary_tree_star(), 0).unwrap();
        assert_eq!(t.graph.vertex_count(), 15);
        assert_eq!(t.graph.edge_count(), 14);
        assert!(t.graph.is_connected());
    }

    #[test]
    fn torso_contracts_branches() {
        let g = path(4);
        let d = TreeCutDecomposition::identity(&g);
        let t = torso(&g, &d, 1).unwrap();
        assert_eq!(t.vertices, vec![TorsoVertex::Bag(1), TorsoVertex::Branch(0), TorsoVertex::Branch(2)]);
        assert_eq!(t.graph.edge_count(), 2);
        assert_eq!(t.edge_origin, vec![0, 1]);
    }

    #[test]
    fn empty_branches_are_dropped() {
        let g = path(2);
        let d = TreeCutDecomposition::new(vec![vec![0, 1], vec![]], vec![(0, 1)]);
        let t = torso(&g, &d, 0).unwrap();
        assert_eq!(t.graph.vertex_count(), 2);
        let t = torso(&g, &d, 1).unwrap();
        assert_eq!(t.vertices, vec![TorsoVertex::Branch(0)]);
        assert_eq!(three_center(&g, &d, 1).unwrap().vertex_count(), 0);
    }

    #[test]
    fn three_center_examples() {
        let g = complete(4);
        let d = TreeCutDecomposition::new(vec![vec![0, 1, 2], vec![3]], vec![(0, 1)]);
        let c = three_center(&g, &d, 0).unwrap();
        assert_eq!(c.vertex_count(), 4);
        assert_eq!(c.edges.len(), 6);

        let bt = binary_tree_15();
        let c = three_center(&bt, &binary_tree_star(), 0).unwrap();
        assert_eq!(c.vertices, vec![TorsoVertex::Bag(0)]);
        assert!(c.edges.is_empty());
    }

    #[test]
    fn three_center_splices_paths() {
        // the middle node's torso is a triangle on the bag vertex and two branches
        let g = cycle(5);
        let d = TreeCutDecomposition::identity(&path(5));
        let c = three_center(&g, &d, 2).unwrap();
        // splicing one branch leaves the other joined to the bag by a parallel pair
        assert_eq!(c.vertices, vec![TorsoVertex::Bag(2)]);
        assert!(c.edges.is_empty());
    }

    #[test]
    fn parallel_pair_vertex_is_deleted() {
        let g = MultiGraph::new(3, [(0, 1), (0, 1), (0, 2), (0, 2), (0, 2)]).unwrap();
        let d = TreeCutDecomposition::new(vec![vec![0, 2], vec![1]], vec![(0, 1)]);
        let c = three_center(&g, &d, 0).unwrap();
        assert_eq!(c.vertices, vec![TorsoVertex::Bag(0), TorsoVertex::Bag(2)]);
        assert_eq!(c.edges.len(), 3);
    }

    #[test]
    fn shuffled_suppression_gives_same_result() {
        let g = binary_tree_15();
        let d = binary_tree_star();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let canonical = three_center(&g, &d, 0).unwrap();
        for _ in 0..20 {
            let other = three_center_shuffled(&g, &d, 0, &mut rng).unwrap();
            assert_eq!(other.vertices, canonical.vertices);
            assert_eq!(other.labelled_edges(), canonical.labelled_edges());
        }
    }

    #[test]
    fn binary_tree_star_widths() {
        let g = binary_tree_15();
        let w = measure_widths(&g, &binary_tree_star()).unwrap();
        assert_eq!(w, WidthReport { wollan: 3, gprtw: 7, adhesion_width: 14, bag_width: 1 });
    }

    #[test]
    fn k4_split_widths() {
        let g = complete(4);
        let d = TreeCutDecomposition::new(vec![vec![0, 1, 2], vec![3]], vec![(0, 1)]);
        let w = measure_widths(&g, &d).unwrap();
        assert_eq!(w, WidthReport { wollan: 4, gprtw: 4, adhesion_width: 3, bag_width: 3 });
        let single = measure_widths(&g, &TreeCutDecomposition::single_bag(&g)).unwrap();
        assert_eq!(single, WidthReport { wollan: 4, gprtw: 4, adhesion_width: 0, bag_width: 4 });
    }

    #[test]
    fn invalid_decomposition_is_rejected() {
        let g = path(3);
        let d = TreeCutDecomposition::new(vec![vec![0]], vec![]);
        assert!(matches!(measure_widths(&g, &d), Err(DecompositionError::Invalid(_))));
    }
}
