use super::{DecompositionError, Layout, NodeId, TreeCutDecomposition};
use crate::graph::{verify_immersion_model, ImmersionCheck, ImmersionModel, MultiGraph};

/// Pulls a decomposition of `G` back to a graph `H` immersed in `G`: same
/// tree, and the bag of `t` becomes the set of `H`-vertices whose image lies
/// in the bag of `t`.
pub fn induce_on_immersion(
    g: &MultiGraph,
    h: &MultiGraph,
    model: &ImmersionModel,
    d: &TreeCutDecomposition,
) -> Result<TreeCutDecomposition, DecompositionError> {
    match verify_immersion_model(g, h, model) {
        Ok(ImmersionCheck::Valid) => {}
        Ok(ImmersionCheck::Violated(v)) => return Err(DecompositionError::InvalidModel(format!("{v:?}"))),
        Err(e) => return Err(DecompositionError::InvalidModel(e.to_string())),
    }
    let layout = Layout::new(g, d)?;
    let mut bags = vec![Vec::new(); d.node_count()];
    for (x, &image) in model.vertex_map.iter().enumerate() {
        bags[layout.node_of[image]].push(x);
    }
    Ok(TreeCutDecomposition::new(bags, d.tree_edges().to_vec()))
}

/// Deletes empty-bag nodes of degree at most 1 and splices out empty-bag
/// nodes of degree 2 until neither applies. Surviving nodes keep their
/// relative order. None of the four widths change.
pub fn simplify(g: &MultiGraph, d: &TreeCutDecomposition) -> Result<TreeCutDecomposition, DecompositionError> {
    Layout::new(g, d)?;
    let nodes = d.node_count();
    let mut neighbours: Vec<Vec<NodeId>> = vec![Vec::new(); nodes];
    for &(s, t) in d.tree_edges() {
        neighbours[s].push(t);
        neighbours[t].push(s);
    }
    let mut alive = vec![true; nodes];
    let mut remaining = nodes;
    loop {
        let removable = (0..nodes).find(|&t| {
            alive[t] && d.bag(t).is_empty() && remaining > 1 && neighbours[t].len() <= 2
        });
        let Some(t) = removable else { break };
        let around = std::mem::take(&mut neighbours[t]);
        for &s in &around {
            neighbours[s].retain(|&x| x != t);
        }
        if let [x, y] = around[..] {
            neighbours[x].push(y);
            neighbours[y].push(x);
        }
        alive[t] = false;
        remaining -= 1;
    }
    let mut index = vec![usize::MAX; nodes];
    let mut bags = Vec::with_capacity(remaining);
    for t in (0..nodes).filter(|&t| alive[t]) {
        index[t] = bags.len();
        bags.push(d.bag(t).to_vec());
    }
    let mut tree_edges = Vec::with_capacity(remaining.saturating_sub(1));
    for s in (0..nodes).filter(|&s| alive[s]) {
        for &t in &neighbours[s] {
            if s < t {
                tree_edges.push((index[s], index[t]));
            }
        }
    }
    tree_edges.sort_unstable();
    Ok(TreeCutDecomposition::new(bags, tree_edges))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::measure_widths;
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn identity_model_keeps_decomposition() {
        let g = binary_tree_15();
        let d = binary_tree_star();
        let induced = induce_on_immersion(&g, &g, &ImmersionModel::identity(&g), &d).unwrap();
        assert_eq!(induced, d);
    }

    #[test]
    fn triangle_pulled_back_from_c6() {
        let g = cycle(6);
        let h = cycle(3);
        let model = ImmersionModel {
            vertex_map: vec![0, 2, 4],
            edge_paths: vec![vec![0, 1], vec![2, 3], vec![4, 5]],
        };
        let d = TreeCutDecomposition::new(vec![vec![0, 1, 2], vec![3, 4, 5]], vec![(0, 1)]);
        let induced = induce_on_immersion(&g, &h, &model, &d).unwrap();
        assert_eq!(induced.bags(), &[vec![0, 1], vec![2]]);
        assert!(induced.is_valid(&h));
        let before = measure_widths(&g, &d).unwrap();
        let after = measure_widths(&h, &induced).unwrap();
        assert!(after.bag_width <= before.bag_width);
        assert!(after.adhesion_width <= before.adhesion_width);
    }

    #[test]
    fn bad_model_is_rejected() {
        let g = path(3);
        let h = path(2);
        let model = ImmersionModel { vertex_map: vec![1, 1], edge_paths: vec![vec![0]] };
        let d = TreeCutDecomposition::single_bag(&g);
        assert!(matches!(induce_on_immersion(&g, &h, &model, &d), Err(DecompositionError::InvalidModel(_))));
    }

    #[test]
    fn empty_leaf_is_removed() {
        let g = path(2);
        let d = TreeCutDecomposition::new(vec![vec![0], vec![1], vec![]], vec![(0, 1), (1, 2)]);
        let s = simplify(&g, &d).unwrap();
        assert_eq!(s, TreeCutDecomposition::new(vec![vec![0], vec![1]], vec![(0, 1)]));
    }

    #[test]
    fn empty_degree_two_node_is_spliced() {
        let g = complete(4);
        let d = TreeCutDecomposition::new(vec![vec![0, 1], vec![], vec![2, 3]], vec![(0, 1), (1, 2)]);
        let s = simplify(&g, &d).unwrap();
        assert_eq!(s, TreeCutDecomposition::new(vec![vec![0, 1], vec![2, 3]], vec![(0, 1)]));
        assert_eq!(measure_widths(&g, &d).unwrap(), measure_widths(&g, &s).unwrap());
    }

    #[test]
    fn canonical_decomposition_is_fixed() {
        let g = binary_tree_15();
        let d = binary_tree_star();
        assert_eq!(simplify(&g, &d).unwrap(), d);
        let g = complete(3);
        let star = TreeCutDecomposition::new(vec![vec![], vec![0], vec![1], vec![2]], vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(simplify(&g, &star).unwrap(), star);
    }

    #[test]
    fn chain_of_empty_nodes_collapses() {
        let g = path(1);
        let d = TreeCutDecomposition::new(vec![vec![], vec![], vec![0], vec![]], vec![(0, 1), (1, 2), (2, 3)]);
        let s = simplify(&g, &d).unwrap();
        assert_eq!(s, TreeCutDecomposition::single_bag(&g));
    }
}
