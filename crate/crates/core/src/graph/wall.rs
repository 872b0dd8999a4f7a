use super::MultiGraph;

/// The `k × k` wall: `k` horizontal paths of `2k` vertices; row `i` and row
/// `i+1` are joined in column `j` when `i` and `j` have the same parity
/// (1-based). Vertex `v^i_j` gets id `(i-1)·2k + (j-1)`; horizontal edges come
/// first, row by row, then the vertical ones.
pub fn wall(k: usize) -> MultiGraph {
    assert!(k >= 1, "wall size must be positive");
    let width = 2 * k;
    let id = |i: usize, j: usize| (i - 1) * width + (j - 1);
    let mut edges = Vec::with_capacity(3 * k * k);
    for i in 1..=k {
        for j in 1..width {
            edges.push((id(i, j), id(i, j + 1)));
        }
    }
    for i in 1..k {
        for j in 1..=width {
            if i % 2 == j % 2 {
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    MultiGraph::new(k * width, edges).expect("wall construction is loop-free")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Adjacency rule applied to every vertex pair independently.
    fn rule_edge_count(k: usize) -> usize {
        let mut count = 0;
        let cells: Vec<(usize, usize)> =
            (1..=k).flat_map(|i| (1..=2 * k).map(move |j| (i, j))).collect();
        for (x, &(i1, j1)) in cells.iter().enumerate() {
            for &(i2, j2) in &cells[x + 1..] {
                let horizontal = i1 == i2 && j1.abs_diff(j2) == 1;
                let (lo, hi) = if i1 < i2 { (i1, i2) } else { (i2, i1) };
                let vertical = j1 == j2
                    && hi == lo + 1
                    && ((lo % 2 == 1 && j1 % 2 == 1) || (lo % 2 == 0 && j1 % 2 == 0));
                if horizontal || vertical {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn small_walls() {
        let w1 = wall(1);
        assert_eq!((w1.vertex_count(), w1.edge_count()), (2, 1));
        let w2 = wall(2);
        assert_eq!((w2.vertex_count(), w2.edge_count()), (8, 8));
    }

    #[test]
    fn counts_match_adjacency_rule() {
        for k in 1..=6 {
            let w = wall(k);
            assert_eq!(w.vertex_count(), 2 * k * k);
            assert_eq!(w.edge_count(), rule_edge_count(k));
            assert_eq!(w.edge_count(), 3 * k * k - 2 * k);
            assert!(w.vertices().all(|v| w.degree(v) <= 3));
            assert!(w.is_connected());
        }
    }
}
