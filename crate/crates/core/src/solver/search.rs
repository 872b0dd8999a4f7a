//! Memoised search over vertex sets. A rooted subtree of a decomposition is
//! summarised by the set `S` of vertices in its bags: its root holds some
//! `X ⊆ S` and its child subtrees split `S \ X`. The adhesion of a tree edge
//! is `δ(S)` of the subtree below it, so whether a subtree on `S` can meet
//! the bounds depends on `S` alone.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{Clock, SolverError};
use crate::decomposition::TreeCutDecomposition;
use crate::graph::MultiGraph;
use crate::vertex_set::VertexSet;

struct Search<'a> {
    g: &'a MultiGraph,
    a: usize,
    b: usize,
    clock: &'a Clock,
    bold: HashMap<u64, FixedBitSet>,
    /// `Some((bag, parts))` when a subtree on the key set exists.
    memo: HashMap<u64, Option<(u64, Vec<u64>)>>,
}

impl Search<'_> {
    fn bold(&mut self, s: u64) -> FixedBitSet {
        let g = self.g;
        self.bold
            .entry(s)
            .or_insert_with(|| {
                let mut set = FixedBitSet::with_capacity(g.edge_count());
                let boundary = g.boundary_of(VertexSet::from_bits(s));
                if boundary.len() >= 3 {
                    set.extend(boundary);
                }
                set
            })
            .clone()
    }

    fn feasible(&mut self, s: u64) -> Result<bool, SolverError> {
        if let Some(w) = self.memo.get(&s) {
            return Ok(w.is_some());
        }
        self.clock.check()?;
        let base = self.bold(s);
        let mut found = None;
        if base.count_ones(..) < self.a {
            let mut bags: Vec<VertexSet> =
                VertexSet::from_bits(s).subsets().filter(|x| x.len() < self.b).collect();
            bags.reverse();
            for x in bags {
                let mut parts = Vec::new();
                if self.split(s, s & !x.bits(), &base, &mut parts)? {
                    found = Some((x.bits(), parts));
                    break;
                }
            }
        }
        let ok = found.is_some();
        self.memo.insert(s, found);
        Ok(ok)
    }

    /// Splits `rest` into feasible parts, none equal to `whole`, keeping the
    /// union of bold adhesions below `a`.
    fn split(&mut self, whole: u64, rest: u64, used: &FixedBitSet, parts: &mut Vec<u64>) -> Result<bool, SolverError> {
        if rest == 0 {
            return Ok(true);
        }
        let low = rest & rest.wrapping_neg();
        let others = rest & !low;
        let mut sub = others;
        loop {
            let t = sub | low;
            if t != whole {
                let mut union = used.clone();
                union.union_with(&self.bold(t));
                if union.count_ones(..) < self.a && self.feasible(t)? {
                    parts.push(t);
                    if self.split(whole, rest & !t, &union, parts)? {
                        return Ok(true);
                    }
                    parts.pop();
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
        Ok(false)
    }

    fn build(&self, s: u64, bags: &mut Vec<Vec<usize>>, edges: &mut Vec<(usize, usize)>) -> usize {
        let (x, parts) = self.memo[&s].as_ref().expect("only feasible sets are built");
        let node = bags.len();
        bags.push(VertexSet::from_bits(*x).to_vec());
        for &p in parts {
            let child = self.build(p, bags, edges);
            edges.push((node, child));
        }
        node
    }
}

/// A decomposition of `g` with adhesion-width `< a` and bag-width `< b`.
pub(crate) fn search(g: &MultiGraph, a: usize, b: usize, clock: &Clock) -> Result<Option<TreeCutDecomposition>, SolverError> {
    g.check_small()?;
    let mut s = Search { g, a, b, clock, bold: HashMap::new(), memo: HashMap::new() };
    let all = g.all_vertices().bits();
    if !s.feasible(all)? {
        return Ok(None);
    }
    let (mut bags, mut edges) = (Vec::new(), Vec::new());
    s.build(all, &mut bags, &mut edges);
    Ok(Some(TreeCutDecomposition::new(bags, edges)))
}
