use super::{EdgeId, GraphError, MultiGraph, Vertex};

/// Maximum number of pairwise edge-disjoint `u`–`v` paths (Menger), computed
/// as a unit-capacity maximum flow on the undirected multigraph.
pub fn max_edge_disjoint_paths(g: &MultiGraph, u: Vertex, v: Vertex) -> Result<usize, GraphError> {
    for w in [u, v] {
        if !g.has_vertex(w) {
            return Err(GraphError::BadVertex(w));
        }
    }
    if u == v {
        return Err(GraphError::SameVertex(u));
    }
    Ok(edge_disjoint_paths_capped(g, u, v, usize::MAX))
}

/// Augments until `cap` paths are found or no augmenting path remains.
pub(crate) fn edge_disjoint_paths_capped(g: &MultiGraph, s: Vertex, t: Vertex, cap: usize) -> usize {
    // flow[e] is +1 when one unit runs from endpoint 0 to endpoint 1, -1 for
    // the reverse direction.
    let mut flow = vec![0i8; g.edge_count()];
    let mut found = 0;
    let mut via: Vec<Option<(Vertex, EdgeId)>> = vec![None; g.vertex_count()];
    while found < cap {
        via.iter_mut().for_each(|p| *p = None);
        let mut queue = std::collections::VecDeque::from([s]);
        let mut reached = vec![false; g.vertex_count()];
        reached[s] = true;
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &(y, e) in g.incident(x) {
                if reached[y] || directed_flow(g, &flow, e, x) > 0 {
                    continue;
                }
                reached[y] = true;
                via[y] = Some((x, e));
                queue.push_back(y);
            }
        }
        if !reached[t] {
            break;
        }
        let mut y = t;
        while let Some((x, e)) = via[y] {
            let forward = g.endpoints(e).0 == x;
            flow[e] += if forward { 1 } else { -1 };
            y = x;
        }
        found += 1;
    }
    found
}

fn directed_flow(g: &MultiGraph, flow: &[i8], e: EdgeId, from: Vertex) -> i8 {
    if g.endpoints(e).0 == from {
        flow[e]
    } else {
        -flow[e]
    }
}
