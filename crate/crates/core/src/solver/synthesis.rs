//! Brambles for graphs that have no decomposition below `(a, b)`, built
//! from the petals of good decompositions of a torso.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::ops::ControlFlow;

use super::{canonical_decompositions, check_size, exists_decomposition, search, Clock, SolverBudget, SolverError};
use crate::certificates::{bramble_orders, verify_bramble, Bramble, CertificateError, Slab};
use crate::decomposition::{edge_adhesions, node_adhesion, DecompositionError, Layout, TreeCutDecomposition};
use crate::graph::{three_ecc, EdgeId, GraphError, MultiGraph, Vertex};
use crate::tcc::{component_torso, torso_with_model};
use crate::vertex_set::VertexSet;

/// A decomposition whose node adhesions are all below `a` and whose bags of
/// size `≥ b` all sit at leaves. The petals are those large leaf bags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodDecomposition {
    pub decomposition: TreeCutDecomposition,
    pub petals: Vec<Vec<Vertex>>,
}

/// A star with an empty center and one leaf per component of `G - F`,
/// ordered by smallest vertex. Every node adhesion lies inside `F`, so the
/// result is good whenever `|F| < a`.
pub fn cut_star_decomposition(g: &MultiGraph, f: &[EdgeId], b: usize) -> Result<GoodDecomposition, GraphError> {
    let mut cut = vec![false; g.edge_count()];
    for &e in f {
        *cut.get_mut(e).ok_or(GraphError::BadEdge(e))? = true;
    }
    let mut label = vec![usize::MAX; g.vertex_count()];
    let mut bags: Vec<Vec<Vertex>> = vec![Vec::new()];
    for start in g.vertices() {
        if label[start] != usize::MAX {
            continue;
        }
        let id = bags.len();
        let mut stack = vec![start];
        label[start] = id;
        let mut bag = Vec::new();
        while let Some(v) = stack.pop() {
            bag.push(v);
            for &(w, e) in g.incident(v) {
                if !cut[e] && label[w] == usize::MAX {
                    label[w] = id;
                    stack.push(w);
                }
            }
        }
        bags.push(bag);
    }
    let tree_edges = (1..bags.len()).map(|t| (0, t)).collect();
    let decomposition = TreeCutDecomposition::new(bags, tree_edges);
    let petals = decomposition.bags()[1..].iter().filter(|bag| bag.len() >= b).cloned().collect();
    Ok(GoodDecomposition { decomposition, petals })
}

/// The petals of `d` if it is good for `(a, b)`, otherwise `None`.
pub fn good_petals(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    a: usize,
    b: usize,
) -> Result<Option<Vec<Vec<Vertex>>>, DecompositionError> {
    let layout = Layout::new(g, d)?;
    Ok(petals_in_layout(g, d, &layout, a, b))
}

fn petals_in_layout(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    layout: &Layout,
    a: usize,
    b: usize,
) -> Option<Vec<Vec<Vertex>>> {
    let adhesions = edge_adhesions(g, layout);
    let mut petals = Vec::new();
    for t in 0..d.node_count() {
        if node_adhesion(layout, &adhesions, t).len() >= a {
            return None;
        }
        if d.bag(t).len() >= b {
            if layout.adjacency[t].len() > 1 {
                return None;
            }
            petals.push(d.bag(t).to_vec());
        }
    }
    Some(petals)
}

/// The bramble together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Synthesis {
    pub bramble: Bramble,
    /// The 3-edge-connected component whose torso was used.
    pub component: Vec<Vertex>,
    /// The minimal petal family, in vertices of `G`. Its connected members
    /// are the slab cores.
    pub family: Vec<Vec<Vertex>>,
}

pub fn synthesize_bramble(g: &MultiGraph, a: usize, b: usize, budget: &SolverBudget) -> Result<Bramble, SolverError> {
    synthesize_bramble_detailed(g, a, b, budget).map(|s| s.bramble)
}

/// A bramble of adhesion-order `≥ a` and bag-order `≥ b`, for a graph with
/// no decomposition of adhesion-width `< a` and bag-width `< b`.
pub fn synthesize_bramble_detailed(
    g: &MultiGraph,
    a: usize,
    b: usize,
    budget: &SolverBudget,
) -> Result<Synthesis, SolverError> {
    if a == 0 || b == 0 {
        return Err(SolverError::PreconditionViolated("a and b must be positive".into()));
    }
    if exists_decomposition(g, a, b, budget)?.is_some() {
        return Err(SolverError::PreconditionViolated(format!(
            "a decomposition of adhesion-width < {a} and bag-width < {b} exists"
        )));
    }
    let partition = three_ecc(g);
    if b == 1 {
        // a lone vertex has no edges to cut
        let bramble = Bramble { slabs: vec![Slab::new(vec![0], Vec::new(), vec![0])] };
        let component = partition.blocks()[partition.block_of(0)].clone();
        return finish(g, a, b, Synthesis { bramble, component, family: vec![vec![0]] });
    }

    let clock = Clock::start(budget);
    let mut stuck = None;
    for block in partition.blocks() {
        let torso = component_torso(g, block)?;
        if search::search(&torso.graph, a, b, &clock)?.is_none() {
            stuck = Some(block.clone());
            break;
        }
    }
    let block = stuck.ok_or_else(|| SolverError::WitnessRejected("every torso has a decomposition".into()))?;
    check_size(block.len(), budget.max_enumeration_vertices, "torso")?;
    let (torso, model) = torso_with_model(g, &block);
    let h = &torso.graph;

    let mut petal_sets: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut missing = false;
    canonical_decompositions(h, budget, |d| {
        let layout = Layout::new_unchecked(h, d);
        if let Some(petals) = petals_in_layout(h, d, &layout, a, b) {
            if petals.is_empty() {
                missing = true;
                return ControlFlow::Break(());
            }
            let mut masks: Vec<u64> = petals.iter().map(|p| p.iter().copied().collect::<VertexSet>().bits()).collect();
            masks.sort_unstable();
            masks.dedup();
            petal_sets.insert(masks);
        }
        ControlFlow::Continue(())
    })?;
    if missing {
        return Err(SolverError::WitnessRejected("a good decomposition of the torso has no petal".into()));
    }

    let family = minimal_family(&petal_sets);
    let mut slabs = Vec::new();
    for &s in &family {
        let core = VertexSet::from_bits(s);
        let local = core.to_vec();
        if !h.induced(&local)?.0.is_connected() {
            continue;
        }
        let mut vertices: Vec<Vertex> = local.iter().map(|&x| block[x]).collect();
        let mut edges = Vec::new();
        for (i, &(x, y)) in h.edges().iter().enumerate() {
            if core.contains(x) && core.contains(y) {
                for &e in &model.edge_paths[i] {
                    let (u, v) = g.endpoints(e);
                    vertices.extend([u, v]);
                    edges.push(e);
                }
            }
        }
        let core: Vec<Vertex> = local.iter().map(|&x| block[x]).collect();
        slabs.push(Slab::new(vertices, edges, core));
    }
    let family = family.iter().map(|&s| VertexSet::from_bits(s).iter().map(|x| block[x]).collect()).collect();
    finish(g, a, b, Synthesis { bramble: Bramble { slabs }, component: block, family })
}

fn finish(g: &MultiGraph, a: usize, b: usize, s: Synthesis) -> Result<Synthesis, SolverError> {
    verify_bramble(g, &s.bramble).map_err(|v| SolverError::Certificate(CertificateError::InvalidBramble(v)))?;
    let orders = bramble_orders(g, &s.bramble, a);
    if !orders.adhesion.at_least(a) || orders.bag < b {
        return Err(SolverError::WitnessRejected(format!(
            "synthesised bramble has orders ({:?}, {}), below ({a}, {b})",
            orders.adhesion, orders.bag
        )));
    }
    Ok(s)
}

/// Starts from every petal and repeatedly drops the lexicographically least
/// inclusion-minimal member whose removal still leaves a petal of every
/// good decomposition. Dropping minimal members keeps the family closed
/// upward, and the fixpoint is minimal.
fn minimal_family(petal_sets: &BTreeSet<Vec<u64>>) -> Vec<u64> {
    let mut family: Vec<u64> = petal_sets.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let hits = |fam: &[u64]| petal_sets.iter().all(|ps| ps.iter().any(|p| fam.contains(p)));
    loop {
        let mut minimal: Vec<u64> = family
            .iter()
            .copied()
            .filter(|&c| !family.iter().any(|&d| d != c && d & c == d))
            .collect();
        minimal.sort_by(|&x, &y| lex(x, y));
        let removable = minimal.into_iter().find(|&c| {
            let rest: Vec<u64> = family.iter().copied().filter(|&d| d != c).collect();
            hits(&rest)
        });
        match removable {
            Some(c) => family.retain(|&d| d != c),
            None => break,
        }
    }
    family.sort_by(|&x, &y| lex(x, y));
    family
}

fn lex(x: u64, y: u64) -> Ordering {
    VertexSet::from_bits(x).lex_cmp(VertexSet::from_bits(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{bramble_to_tangle, verify_tangle};
    use crate::graph::named::*;

    fn budget() -> SolverBudget {
        SolverBudget::default()
    }

    #[test]
    fn cut_star_examples() {
        let k4 = complete(4);
        let s = cut_star_decomposition(&k4, &[], 3).unwrap();
        assert_eq!(s.decomposition.bags(), &[vec![], vec![0, 1, 2, 3]]);
        assert_eq!(s.petals, vec![vec![0, 1, 2, 3]]);

        let delta0 = k4.boundary([0]).unwrap();
        let s = cut_star_decomposition(&k4, &delta0, 3).unwrap();
        assert_eq!(s.decomposition.bags(), &[vec![], vec![0], vec![1, 2, 3]]);
        assert_eq!(good_petals(&k4, &s.decomposition, 4, 3).unwrap(), Some(vec![vec![1, 2, 3]]));
        assert_eq!(good_petals(&k4, &s.decomposition, 3, 3).unwrap(), None);

        let c4 = cycle(4);
        let s = cut_star_decomposition(&c4, &[0, 2], 2).unwrap();
        assert_eq!(s.decomposition.bags(), &[vec![], vec![0, 3], vec![1, 2]]);
        assert_eq!(s.petals.len(), 2);
        assert!(cut_star_decomposition(&c4, &[9], 2).is_err());
    }

    #[test]
    fn big_bags_must_be_leaves() {
        let g = path(3);
        let d = TreeCutDecomposition::new(vec![vec![0], vec![1], vec![2]], vec![(0, 1), (1, 2)]);
        assert_eq!(good_petals(&g, &d, 1, 1).unwrap(), None);
        assert_eq!(good_petals(&g, &d, 1, 2).unwrap(), Some(vec![]));
    }

    #[test]
    fn k4_bramble() {
        let g = complete(4);
        let s = synthesize_bramble_detailed(&g, 3, 3, &budget()).unwrap();
        assert_eq!(s.component, vec![0, 1, 2, 3]);
        assert!(s.bramble.slabs.iter().any(|sl| sl.core == vec![0, 1, 2, 3]));
        let orders = bramble_orders(&g, &s.bramble, 3);
        assert!(orders.adhesion.at_least(3) && orders.bag >= 3);
        let t = bramble_to_tangle(&g, &s.bramble, 3, 3).unwrap();
        assert_eq!(verify_tangle(&g, &t), Ok(()));
    }

    #[test]
    fn precondition_errors() {
        assert!(matches!(
            synthesize_bramble(&complete(4), 4, 4, &budget()),
            Err(SolverError::PreconditionViolated(_))
        ));
        assert!(matches!(synthesize_bramble(&cycle(3), 2, 2, &budget()), Err(SolverError::PreconditionViolated(_))));
    }

    #[test]
    fn bag_bound_one_uses_a_lone_vertex() {
        let g = path(3);
        let bramble = synthesize_bramble(&g, 5, 1, &budget()).unwrap();
        assert_eq!(bramble.slabs, vec![Slab::new(vec![0], vec![], vec![0])]);
    }

    #[test]
    fn replacement_edges_are_expanded() {
        // K4 with its edge (0,1) subdivided through vertex 4, plus a second
        // copy of that path so that {0,1,2,3} stays one component
        let g = MultiGraph::new(
            6,
            [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (4, 1), (0, 5), (5, 1)],
        )
        .unwrap();
        let s = synthesize_bramble_detailed(&g, 3, 3, &budget()).unwrap();
        assert_eq!(s.component, vec![0, 1, 2, 3]);
        assert!(s.bramble.slabs.iter().any(|sl| sl.vertices.contains(&4) || sl.vertices.contains(&5)));
    }

    #[test]
    fn minimal_family_drops_redundant_petals() {
        // one decomposition has petals {0,1} and {2,3}, another has {0,1,2}
        let sets: BTreeSet<Vec<u64>> = [vec![0b0011, 0b1100], vec![0b0111]].into_iter().collect();
        let f = minimal_family(&sets);
        // {0,1} is removed first, then {2,3} must stay and {0,1,2} too
        assert_eq!(f, vec![0b0111, 0b1100]);
    }
}
