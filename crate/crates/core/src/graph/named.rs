//! Small named graphs used throughout the tests and by the CLI generators.

use super::MultiGraph;

pub fn complete(n: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    MultiGraph::new(n, edges).unwrap()
}

pub fn cycle(n: usize) -> MultiGraph {
    MultiGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn path(n: usize) -> MultiGraph {
    MultiGraph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn parallel(k: usize) -> MultiGraph {
    MultiGraph::new(2, std::iter::repeat((0, 1)).take(k)).unwrap()
}

/// Two K4s on {0..3} and {4..7} joined by the bridge 3-4.
pub fn double_k4() -> MultiGraph {
    let mut edges = Vec::new();
    for base in [0, 4] {
        for u in 0..4 {
            for v in u + 1..4 {
                edges.push((base + u, base + v));
            }
        }
    }
    edges.push((3, 4));
    MultiGraph::new(8, edges).unwrap()
}

/// Complete binary tree on 15 vertices, heap numbering (root 0).
pub fn binary_tree_15() -> MultiGraph {
    MultiGraph::new(15, (1..15).map(|i| ((i - 1) / 2, i))).unwrap()
}

/// Vertices 0,1 with three parallel edges, vertex 2 adjacent to both.
pub fn theta3() -> MultiGraph {
    MultiGraph::new(3, [(0, 1), (0, 1), (0, 1), (0, 2), (2, 1)]).unwrap()
}
