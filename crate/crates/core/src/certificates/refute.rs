use std::collections::HashMap;

use super::tangle::{is_sigma_star, verify_tangle, TangleViolation};
use super::{CertificateError, OrientedSeparation, Tangle};
use crate::decomposition::{ab_widths, Layout, NodeId, TreeCutDecomposition};
use crate::graph::MultiGraph;
use crate::vertex_set::VertexSet;

/// A node all of whose tree edges point toward it, with the oriented
/// separations of those edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SinkStar {
    pub node: NodeId,
    pub members: Vec<OrientedSeparation>,
}

/// Orients every tree edge of `d` the way the tangle orients its separation
/// and returns the star at the smallest sink node. When `d` has
/// adhesion-width `< a` and bag-width `< b`, that star lies in `Σ_{a,b}`,
/// which shows the orientation is not an `(a, b)`-tangle.
pub fn refute_decomposition(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
    tangle: &Tangle,
) -> Result<SinkStar, CertificateError> {
    let layout = Layout::new(g, d)?;
    g.check_small()?;
    let (adhw, bagw) = ab_widths(g, d, &layout);
    if adhw >= tangle.a || bagw >= tangle.b {
        return Err(CertificateError::PreconditionViolated(format!(
            "decomposition has adhesion-width {adhw} and bag-width {bagw}, tangle asks for below ({}, {})",
            tangle.a, tangle.b
        )));
    }
    match verify_tangle(g, tangle) {
        Ok(()) | Err(TangleViolation::ContainsStar { .. }) => {}
        Err(v) => return Err(CertificateError::InvalidTangle(v)),
    }
    if d.node_count() == 1 {
        return Err(CertificateError::DegenerateStar);
    }
    let toward: HashMap<VertexSet, VertexSet> = tangle.oriented.iter().map(|s| (s.from, s.to)).collect();

    // for tree edge i, the side of the child subtree
    let all = g.all_vertices();
    let mut points_to_child = vec![false; d.tree_edges().len()];
    let mut child_side = vec![VertexSet::empty(); d.tree_edges().len()];
    for (i, side) in child_side.iter_mut().enumerate() {
        let c = layout.child_of_edge[i];
        *side = g.vertices().filter(|&v| layout.in_subtree(c, layout.node_of[v])).collect();
        let order = g.boundary_size(*side);
        if order >= tangle.a {
            return Err(CertificateError::SeparationOutsideTangle { tree_edge: i, order });
        }
        let parent_side = all.difference(*side);
        points_to_child[i] = match (toward.get(&parent_side), toward.get(side)) {
            (Some(_), _) => true,
            (_, Some(_)) => false,
            _ => {
                return Err(CertificateError::CertificateCorrupt(format!(
                    "tangle does not orient the separation of tree edge {i}"
                )))
            }
        };
    }
    let sink = (0..d.node_count())
        .find(|&t| {
            layout.adjacency[t].iter().all(|&(_, e)| {
                let head = if points_to_child[e] { layout.child_of_edge[e] } else { other(d, e, layout.child_of_edge[e]) };
                head == t
            })
        })
        .ok_or_else(|| CertificateError::CertificateCorrupt("oriented tree has no sink".into()))?;
    let members: Vec<OrientedSeparation> = layout.adjacency[sink]
        .iter()
        .map(|&(_, e)| {
            let side = child_side[e];
            if layout.child_of_edge[e] == sink {
                OrientedSeparation { from: all.difference(side), to: side }
            } else {
                OrientedSeparation { from: side, to: all.difference(side) }
            }
        })
        .collect();
    if !is_sigma_star(g, tangle.a, tangle.b, &members) {
        return Err(CertificateError::CertificateCorrupt(format!("star at node {sink} is not in Σ_(a,b)")));
    }
    Ok(SinkStar { node: sink, members })
}

fn other(d: &TreeCutDecomposition, e: usize, x: NodeId) -> NodeId {
    let (s, t) = d.tree_edges()[e];
    if s == x {
        t
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::super::tangle::{enumerate_separations, vertex_tangle};
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn k4_split_refutes_every_consistent_orientation() {
        let g = complete(4);
        let d = TreeCutDecomposition::new(vec![vec![0, 1, 2], vec![3]], vec![(0, 1)]);
        // every separation of order < 4 has a side of size ≤ 1; orient toward the big side
        let oriented = enumerate_separations(&g, 4)
            .unwrap()
            .into_iter()
            .map(|s| {
                let forward = OrientedSeparation { from: s.side_a, to: s.side_b };
                if s.side_a.len() > s.side_b.len() {
                    forward.reversed()
                } else {
                    forward
                }
            })
            .collect();
        let t = Tangle { a: 4, b: 4, oriented };
        let star = refute_decomposition(&g, &d, &t).unwrap();
        assert!(is_sigma_star(&g, 4, 4, &star.members));
        assert_eq!(star.node, 0);
    }

    #[test]
    fn tree_with_vertex_tangle() {
        let g = path(4);
        let d = TreeCutDecomposition::identity(&g);
        let t = vertex_tangle(&g, 2, 2, 2).unwrap();
        let star = refute_decomposition(&g, &d, &t).unwrap();
        assert_eq!(star.node, 2);
        assert_eq!(star.members.len(), 2);
        assert!(star.members.iter().all(|s| g.boundary_size(s.from) <= 2));
    }

    #[test]
    fn degenerate_and_precondition_errors() {
        let g = complete(4);
        let single = TreeCutDecomposition::single_bag(&g);
        let t = vertex_tangle(&g, 3, 5, 0).unwrap();
        assert_eq!(refute_decomposition(&g, &single, &t), Err(CertificateError::DegenerateStar));
        let t = vertex_tangle(&g, 3, 4, 0).unwrap();
        assert!(matches!(
            refute_decomposition(&g, &single, &t),
            Err(CertificateError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn thin_edge_above_a_is_reported() {
        let g = path(3);
        let d = TreeCutDecomposition::identity(&g);
        let t = vertex_tangle(&g, 1, 3, 0).unwrap();
        assert_eq!(
            refute_decomposition(&g, &d, &t),
            Err(CertificateError::SeparationOutsideTangle { tree_edge: 0, order: 1 })
        );
    }
}
