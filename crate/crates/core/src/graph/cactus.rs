use super::{EdgeId, MultiGraph, Vertex};

/// Biconnected blocks as edge-id lists (each sorted, blocks ordered by their
/// smallest edge). Parallel edges stay distinct, so a parallel pair forms a
/// two-edge block.
pub fn biconnected_blocks(g: &MultiGraph) -> Vec<Vec<EdgeId>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, edge used to enter it, next incidence index)
        let mut stack: Vec<(Vertex, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        while let Some(&mut (x, entry, ref mut next)) = stack.last_mut() {
            if let Some(&(y, e)) = g.incident(x).get(*next) {
                *next += 1;
                if Some(e) == entry {
                    continue;
                }
                if disc[y] == usize::MAX {
                    disc[y] = time;
                    low[y] = time;
                    time += 1;
                    edge_stack.push(e);
                    stack.push((y, Some(e), 0));
                } else if disc[y] < disc[x] {
                    low[x] = low[x].min(disc[y]);
                    edge_stack.push(e);
                }
            } else {
                stack.pop();
                if let (Some(&(parent, _, _)), Some(e)) = (stack.last(), entry) {
                    low[parent] = low[parent].min(low[x]);
                    if low[x] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some(f) = edge_stack.pop() {
                            block.push(f);
                            if f == e {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks.sort();
    blocks
}

/// True iff every biconnected block is a single edge or a cycle (a parallel
/// pair counts as a cycle of length 2).
pub fn is_cactus(g: &MultiGraph) -> bool {
    let mut block_degree = vec![0usize; g.vertex_count()];
    biconnected_blocks(g).iter().all(|block| {
        if block.len() == 1 {
            return true;
        }
        let mut touched = Vec::new();
        for &e in block {
            let (u, v) = g.endpoints(e);
            for w in [u, v] {
                if block_degree[w] == 0 {
                    touched.push(w);
                }
                block_degree[w] += 1;
            }
        }
        let cycle = touched.iter().all(|&w| block_degree[w] == 2);
        for w in touched {
            block_degree[w] = 0;
        }
        cycle
    })
}
