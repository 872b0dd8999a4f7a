use serde::{Deserialize, Serialize};

use super::tangle::{enumerate_separations, vertex_tangle};
use super::{Bramble, CertificateError, OrientedSeparation, Slab, Tangle};
use crate::graph::{edge_disjoint_paths_capped, EdgeId, MultiGraph, Vertex};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BrambleViolation {
    EmptyBramble,
    UnknownVertex { slab: usize, vertex: Vertex },
    UnknownEdge { slab: usize, edge: EdgeId },
    /// An edge of `H` has an endpoint outside `V(H)`.
    EdgeOutsideSubgraph { slab: usize, edge: EdgeId },
    Disconnected { slab: usize },
    EmptyCore { slab: usize },
    CoreOutsideSubgraph { slab: usize, vertex: Vertex },
    /// Two core vertices with fewer than three edge-disjoint paths in `G`.
    CoreNotThreeEdgeConnected { slab: usize, u: Vertex, v: Vertex },
    NotTouching { first: usize, second: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AdhesionOrder {
    Finite(usize),
    /// No edge set disconnects every slab.
    Infinite,
    /// Nothing smaller than the cap disconnects every slab.
    ExceedsCap(usize),
}

impl AdhesionOrder {
    /// Whether the order is known to be at least `a`.
    pub fn at_least(self, a: usize) -> bool {
        match self {
            AdhesionOrder::Finite(k) => k >= a,
            AdhesionOrder::Infinite => true,
            AdhesionOrder::ExceedsCap(cap) => cap >= a,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrambleOrders {
    pub adhesion: AdhesionOrder,
    pub bag: usize,
}

pub fn verify_bramble(g: &MultiGraph, bramble: &Bramble) -> Result<(), BrambleViolation> {
    if bramble.slabs.is_empty() {
        return Err(BrambleViolation::EmptyBramble);
    }
    for (i, slab) in bramble.slabs.iter().enumerate() {
        verify_slab(g, i, slab)?;
    }
    for (i, x) in bramble.slabs.iter().enumerate() {
        for (j, y) in bramble.slabs.iter().enumerate().skip(i + 1) {
            if !x.core.iter().any(|v| y.core.contains(v)) {
                return Err(BrambleViolation::NotTouching { first: i, second: j });
            }
        }
    }
    Ok(())
}

fn verify_slab(g: &MultiGraph, slab: usize, s: &Slab) -> Result<(), BrambleViolation> {
    let mut in_h = vec![false; g.vertex_count()];
    for &vertex in &s.vertices {
        if !g.has_vertex(vertex) {
            return Err(BrambleViolation::UnknownVertex { slab, vertex });
        }
        in_h[vertex] = true;
    }
    for &edge in &s.edges {
        if edge >= g.edge_count() {
            return Err(BrambleViolation::UnknownEdge { slab, edge });
        }
        let (u, v) = g.endpoints(edge);
        if !in_h[u] || !in_h[v] {
            return Err(BrambleViolation::EdgeOutsideSubgraph { slab, edge });
        }
    }
    if s.vertices.is_empty() || components_of(g, s, &[]).iter().any(|&c| c != 0 && c != usize::MAX) {
        return Err(BrambleViolation::Disconnected { slab });
    }
    let Some(&first) = s.core.first() else {
        return Err(BrambleViolation::EmptyCore { slab });
    };
    if let Some(&vertex) = s.core.iter().find(|&&v| !g.has_vertex(v) || !in_h[v]) {
        return Err(BrambleViolation::CoreOutsideSubgraph { slab, vertex });
    }
    // 3-edge-connectivity is transitive, so comparing against one vertex suffices
    for &v in &s.core[1..] {
        if v != first && edge_disjoint_paths_capped(g, first, v, 3) < 3 {
            return Err(BrambleViolation::CoreNotThreeEdgeConnected { slab, u: first, v });
        }
    }
    Ok(())
}

/// Component labels of `H - F` for vertices of `H` (`usize::MAX` outside
/// `H`), numbered in order of the smallest member.
fn components_of(g: &MultiGraph, s: &Slab, removed: &[bool]) -> Vec<usize> {
    let mut label = vec![usize::MAX; g.vertex_count()];
    let mut adjacency: Vec<Vec<Vertex>> = vec![Vec::new(); g.vertex_count()];
    for &e in &s.edges {
        if removed.get(e).copied().unwrap_or(false) {
            continue;
        }
        let (u, v) = g.endpoints(e);
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    let mut next = 0;
    for &start in &s.vertices {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &adjacency[x] {
                if label[y] == usize::MAX {
                    label[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    label
}

pub(crate) fn disconnects(g: &MultiGraph, s: &Slab, removed: &[bool]) -> bool {
    let label = components_of(g, s, removed);
    s.core.iter().any(|&v| label[v] != label[s.core[0]])
}

/// Bag-order and adhesion-order. Disconnecting sets are searched among the
/// edges of the slabs, by increasing size and then lexicographically, up to
/// size `cap - 1`.
pub fn bramble_orders(g: &MultiGraph, bramble: &Bramble, cap: usize) -> BrambleOrders {
    let bag = bramble.slabs.iter().map(|s| s.core.len()).min().unwrap_or(usize::MAX);
    let adhesion = if bramble.slabs.iter().any(|s| s.core.len() <= 1) {
        AdhesionOrder::Infinite
    } else {
        min_disconnecting_set(g, bramble, cap).map_or(AdhesionOrder::ExceedsCap(cap), |f| AdhesionOrder::Finite(f.len()))
    };
    BrambleOrders { adhesion, bag }
}

/// Lexicographically least disconnecting set of minimum size below `cap`.
pub(crate) fn min_disconnecting_set(g: &MultiGraph, bramble: &Bramble, cap: usize) -> Option<Vec<EdgeId>> {
    let mut candidates: Vec<EdgeId> = bramble.slabs.iter().flat_map(|s| s.edges.iter().copied()).collect();
    candidates.sort_unstable();
    candidates.dedup();
    let mut removed = vec![false; g.edge_count()];
    let mut chosen = Vec::new();
    for size in 0..cap.min(candidates.len() + 1) {
        if search_sets(g, bramble, &candidates, 0, size, &mut removed, &mut chosen) {
            return Some(chosen);
        }
    }
    None
}

fn search_sets(
    g: &MultiGraph,
    bramble: &Bramble,
    candidates: &[EdgeId],
    from: usize,
    left: usize,
    removed: &mut [bool],
    chosen: &mut Vec<EdgeId>,
) -> bool {
    if left == 0 {
        return bramble.slabs.iter().all(|s| disconnects(g, s, removed));
    }
    for i in from..=candidates.len().saturating_sub(left) {
        let e = candidates[i];
        removed[e] = true;
        chosen.push(e);
        if search_sets(g, bramble, candidates, i + 1, left - 1, removed, chosen) {
            return true;
        }
        chosen.pop();
        removed[e] = false;
    }
    false
}

/// Orients every separation of order `< a` toward the side containing a
/// whole core. For `b = 1` the answer is the tangle toward the smallest core
/// vertex of the first slab.
pub fn bramble_to_tangle(g: &MultiGraph, bramble: &Bramble, a: usize, b: usize) -> Result<Tangle, CertificateError> {
    verify_bramble(g, bramble).map_err(CertificateError::InvalidBramble)?;
    g.check_small()?;
    let orders = bramble_orders(g, bramble, a);
    if !orders.adhesion.at_least(a) || orders.bag < b {
        return Err(CertificateError::InsufficientOrders { adhesion: orders.adhesion, bag: orders.bag, a, b });
    }
    if b == 1 {
        return Ok(vertex_tangle(g, a, b, bramble.slabs[0].core[0])?);
    }
    let cores: Vec<VertexSet> = bramble.slabs.iter().map(|s| s.core.iter().copied().collect()).collect();
    let mut oriented = Vec::new();
    for s in enumerate_separations(g, a)? {
        let in_a = cores.iter().any(|k| k.is_subset(s.side_a));
        let in_b = cores.iter().any(|k| k.is_subset(s.side_b));
        let forward = OrientedSeparation { from: s.side_a, to: s.side_b };
        oriented.push(match (in_a, in_b) {
            (false, true) => forward,
            (true, false) => forward.reversed(),
            _ => {
                return Err(CertificateError::CertificateCorrupt(format!(
                    "separation {:?} | {:?} has a core on {} sides",
                    s.side_a,
                    s.side_b,
                    if in_a { "both" } else { "neither" }
                )))
            }
        });
    }
    Ok(Tangle { a, b, oriented })
}
