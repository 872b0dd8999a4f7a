//! Graph generators for property tests and sweeps: random multigraphs,
//! random decompositions, and exhaustive enumeration of small connected
//! multigraphs up to isomorphism.

use std::collections::BTreeSet;

use rand::Rng;

use crate::decomposition::TreeCutDecomposition;
use crate::graph::{MultiGraph, Vertex};

/// `m` edges, each between a uniformly random pair of distinct vertices.
/// Parallel edges are allowed; with `n = 1` no edge can be placed.
pub fn random_multigraph<R: Rng>(rng: &mut R, n: usize, m: usize) -> MultiGraph {
    let m = if n < 2 { 0 } else { m };
    let edges: Vec<(Vertex, Vertex)> = (0..m)
        .map(|_| {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            (u, v)
        })
        .collect();
    MultiGraph::new(n, edges).expect("generated endpoints are in range and distinct")
}

/// A random spanning tree on `0..n` followed by `extra` random edges.
pub fn random_connected_multigraph<R: Rng>(rng: &mut R, n: usize, extra: usize) -> MultiGraph {
    let mut edges: Vec<(Vertex, Vertex)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    if n >= 2 {
        for _ in 0..extra {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            edges.push((u, v));
        }
    }
    MultiGraph::new(n, edges).expect("generated endpoints are in range and distinct")
}

/// A random tree on `1..=max_nodes` nodes with every vertex of `g` dropped
/// into a uniformly random bag. Empty bags are common.
pub fn random_decomposition<R: Rng>(rng: &mut R, g: &MultiGraph, max_nodes: usize) -> TreeCutDecomposition {
    let nodes = rng.gen_range(1..=max_nodes.max(1));
    let tree_edges = (1..nodes).map(|t| (rng.gen_range(0..t), t)).collect();
    let mut bags = vec![Vec::new(); nodes];
    for v in g.vertices() {
        bags[rng.gen_range(0..nodes)].push(v);
    }
    TreeCutDecomposition::new(bags, tree_edges)
}

/// Smallest sorted edge list over all vertex relabellings.
pub fn canonical_form(g: &MultiGraph) -> Vec<(Vertex, Vertex)> {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(Vertex, Vertex)>> = None;
    loop {
        let mut edges: Vec<(Vertex, Vertex)> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        if best.as_ref().map_or(true, |b| edges < *b) {
            best = Some(edges);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All connected loop-free multigraphs with `1 ≤ n ≤ max_n` vertices and at
/// most `max_m` edges, one per isomorphism class, ordered by
/// `(n, m, canonical edge list)`. Each graph is given in canonical labelling.
pub fn connected_multigraphs(max_n: usize, max_m: usize) -> Vec<MultiGraph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(Vertex, Vertex)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for m in n - 1..=max_m {
            let mut seen = BTreeSet::new();
            let mut multiset = Vec::with_capacity(m);
            choose_multiset(&pairs, 0, m, &mut multiset, &mut |edges| {
                let g = MultiGraph::new(n, edges.iter().copied()).expect("pairs are distinct");
                if g.is_connected() {
                    seen.insert(canonical_form(&g));
                }
            });
            out.extend(seen.into_iter().map(|edges| MultiGraph::new(n, edges).expect("canonical form")));
        }
    }
    out
}

fn choose_multiset(
    pairs: &[(Vertex, Vertex)],
    from: usize,
    left: usize,
    current: &mut Vec<(Vertex, Vertex)>,
    visit: &mut impl FnMut(&[(Vertex, Vertex)]),
) {
    if left == 0 {
        visit(current);
        return;
    }
    for i in from..pairs.len() {
        current.push(pairs[i]);
        choose_multiset(pairs, i, left - 1, current, visit);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::graph::named::*;

    #[test]
    fn canonical_form_ignores_labels() {
        let a = MultiGraph::new(3, [(0, 1), (1, 2), (1, 2)]).unwrap();
        let b = MultiGraph::new(3, [(2, 0), (0, 1), (2, 0)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&a), canonical_form(&path(3)));
    }

    #[test]
    fn small_counts() {
        // n = 1: the single vertex; n = 2: k parallel edges for k = 1..=3
        let graphs = connected_multigraphs(2, 3);
        assert_eq!(graphs.len(), 4);
        // connected simple graphs on 4 vertices number 6; with m ≤ 6 every one appears
        let simple4 = connected_multigraphs(4, 6)
            .into_iter()
            .filter(|g| g.vertex_count() == 4)
            .filter(|g| {
                let mut e = g.edges().to_vec();
                e.sort_unstable();
                e.windows(2).all(|w| w[0] != w[1])
            })
            .count();
        assert_eq!(simple4, 6);
    }

    #[test]
    fn three_vertex_multigraphs_with_three_edges() {
        // path with one doubled edge, and the triangle
        let count = connected_multigraphs(3, 3)
            .iter()
            .filter(|g| g.vertex_count() == 3 && g.edge_count() == 3)
            .count();
        assert_eq!(count, 2);
    }

    #[test]
    fn random_generators_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let n = rng.gen_range(1..9);
            let m = rng.gen_range(0..15);
            let g = random_multigraph(&mut rng, n, m);
            assert!(random_decomposition(&mut rng, &g, 6).is_valid(&g));
            let c = random_connected_multigraph(&mut rng, n, 3);
            assert!(c.is_connected());
        }
    }
}
