//! Exact solution of small games. A position is the cop edge set together
//! with the robber's vertex; the cops win from the positions in the least
//! set containing every capture position and closed under "some cop move
//! forces every robber reply into the set".

use super::{Arena, GameConfig, GameError};
use crate::graph::MultiGraph;

pub const DEFAULT_STATE_LIMIT: usize = 200_000;

/// Edge subsets of size at most `k` as bitmasks, by size then value.
fn edge_sets(m: usize, k: usize) -> Vec<u64> {
    let mut out = vec![0u64];
    let mut layer = vec![0u64];
    for _ in 0..k.min(m) {
        let mut next = Vec::new();
        for &s in &layer {
            let from = if s == 0 { 0 } else { 64 - s.leading_zeros() as usize };
            for e in from..m {
                next.push(s | 1 << e);
            }
        }
        out.extend(&next);
        layer = next;
    }
    out
}

fn edges_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&e| mask >> e & 1 == 1).collect()
}

/// Whether the cops have a strategy that catches every robber, whatever
/// her starting vertex, with `config.cops` cops and `config.dogs` dogs.
/// The round limit in `config` is ignored: the game is solved outright.
pub fn cops_win(g: &MultiGraph, config: GameConfig, state_limit: usize) -> Result<bool, GameError> {
    let m = g.edge_count();
    if m > 64 {
        return Err(GameError::TooLarge(format!("{m} edges")));
    }
    let n = g.vertex_count();
    let sets = edge_sets(m, config.cops);
    if sets.len().saturating_mul(n) > state_limit {
        return Err(GameError::TooLarge(format!("{} positions exceed {state_limit}", sets.len() * n)));
    }
    let arena = Arena::new(g, config);
    let reach = |r: usize, blocked: u64| {
        let mut mask = vec![false; m];
        for e in edges_of(blocked) {
            mask[e] = true;
        }
        let seen = g.reachable(r, &mask);
        g.vertices().filter(|&w| seen[w] && arena.same_class(r, w)).collect::<Vec<_>>()
    };

    let mut win = vec![vec![false; n]; sets.len()];
    for (i, &f) in sets.iter().enumerate() {
        for r in 0..n {
            win[i][r] = reach(r, f).len() <= config.dogs;
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for (i, &f) in sets.iter().enumerate() {
            for r in 0..n {
                if win[i][r] {
                    continue;
                }
                let forced = sets.iter().enumerate().any(|(j, &f2)| reach(r, f & f2).iter().all(|&w| win[j][w]));
                if forced {
                    win[i][r] = true;
                    changed = true;
                }
            }
        }
    }
    // sets[0] is the empty set
    Ok((0..n).all(|r| win[0][r]))
}
