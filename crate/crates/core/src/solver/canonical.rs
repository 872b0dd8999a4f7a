//! Enumeration of canonical decompositions, those in which every empty bag
//! sits at a node of degree at least 3. Simplifying any decomposition gives
//! a canonical one with the same widths, so minimising over these is
//! exhaustive. Each canonical decomposition is produced exactly once, rooted
//! at the node holding vertex 0.

use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;
use std::rc::Rc;

use super::{check_size, Clock, SolverBudget, SolverError};
use crate::decomposition::{ab_widths, edge_adhesions, report, DecompositionError, Layout, TreeCutDecomposition};
use crate::graph::{MultiGraph, Vertex};
use crate::vertex_set::VertexSet;

struct Sub {
    bag: u64,
    children: Vec<Rc<Sub>>,
    nodes: usize,
}

/// Set partitions of `mask`, blocks ordered by lowest vertex.
fn set_partitions(mask: u64) -> Vec<Vec<u64>> {
    if mask == 0 {
        return vec![Vec::new()];
    }
    let low = mask & mask.wrapping_neg();
    let others = mask & !low;
    let mut out = Vec::new();
    for sub in VertexSet::from_bits(others).subsets() {
        let block = low | sub.bits();
        for mut rest in set_partitions(mask & !block) {
            rest.insert(0, block);
            out.push(rest);
        }
    }
    out
}

struct Enumerator<'a> {
    limit: usize,
    clock: &'a Clock,
    memo: HashMap<u64, Rc<Vec<Rc<Sub>>>>,
}

impl Enumerator<'_> {
    /// Every canonical subtree hanging below a parent with vertex set `s`.
    fn below(&mut self, s: u64) -> Result<Rc<Vec<Rc<Sub>>>, SolverError> {
        if let Some(list) = self.memo.get(&s) {
            return Ok(Rc::clone(list));
        }
        self.clock.check()?;
        let mut out = Vec::new();
        for x in VertexSet::from_bits(s).subsets() {
            for parts in set_partitions(s & !x.bits()) {
                if x.is_empty() && parts.len() < 2 {
                    continue;
                }
                let _ = self.combine(x.bits(), &parts, &mut |sub| {
                    out.push(Rc::new(sub));
                    ControlFlow::Continue(())
                })?;
            }
        }
        let out = Rc::new(out);
        self.memo.insert(s, Rc::clone(&out));
        Ok(out)
    }

    fn combine(
        &mut self,
        bag: u64,
        parts: &[u64],
        visit: &mut dyn FnMut(Sub) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, SolverError> {
        let options = parts.iter().map(|&p| self.below(p)).collect::<Result<Vec<_>, _>>()?;
        if options.iter().any(|o| o.is_empty()) {
            return Ok(ControlFlow::Continue(()));
        }
        let mut pick = vec![0; options.len()];
        loop {
            let children: Vec<Rc<Sub>> = pick.iter().zip(&options).map(|(&i, o)| Rc::clone(&o[i])).collect();
            let nodes = 1 + children.iter().map(|c| c.nodes).sum::<usize>();
            if nodes <= self.limit && visit(Sub { bag, children, nodes }).is_break() {
                return Ok(ControlFlow::Break(()));
            }
            let Some(i) = (0..pick.len()).find(|&i| pick[i] + 1 < options[i].len()) else {
                return Ok(ControlFlow::Continue(()));
            };
            pick[i] += 1;
            pick[..i].fill(0);
        }
    }
}

fn flatten(sub: &Sub, bags: &mut Vec<Vec<Vertex>>, edges: &mut Vec<(usize, usize)>) -> usize {
    let node = bags.len();
    bags.push(VertexSet::from_bits(sub.bag).to_vec());
    for c in &sub.children {
        let child = flatten(c, bags, edges);
        edges.push((node, child));
    }
    node
}

/// Calls `visit` once for every canonical decomposition of `g` with at most
/// `budget.tree_node_limit(n)` nodes.
pub fn canonical_decompositions(
    g: &MultiGraph,
    budget: &SolverBudget,
    mut visit: impl FnMut(&TreeCutDecomposition) -> ControlFlow<()>,
) -> Result<(), SolverError> {
    let n = g.vertex_count();
    check_size(n, budget.max_enumeration_vertices, "graph")?;
    let clock = Clock::start(budget);
    let mut e = Enumerator { limit: budget.tree_node_limit(n), clock: &clock, memo: HashMap::new() };
    let all = g.all_vertices().bits();
    let mut failure = None;
    for x in VertexSet::from_bits(all & !1).subsets() {
        let bag = x.bits() | 1;
        for parts in set_partitions(all & !bag) {
            let flow = e.combine(bag, &parts, &mut |sub| {
                if let Err(err) = clock.check() {
                    failure = Some(err);
                    return ControlFlow::Break(());
                }
                let (mut bags, mut edges) = (Vec::new(), Vec::new());
                flatten(&sub, &mut bags, &mut edges);
                visit(&TreeCutDecomposition::new(bags, edges))
            })?;
            if let Some(err) = failure {
                return Err(err);
            }
            if flow.is_break() {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// A labelling-independent description of a decomposition: its nonempty
/// bags and, for each tree edge, the side of its split avoiding vertex 0.
/// Two canonical decompositions are the same up to node names iff their
/// keys are equal.
pub fn decomposition_key(
    g: &MultiGraph,
    d: &TreeCutDecomposition,
) -> Result<(Vec<Vec<Vertex>>, Vec<VertexSet>), DecompositionError> {
    let layout = Layout::new(g, d)?;
    let mut bags: Vec<Vec<Vertex>> = d.bags().iter().filter(|b| !b.is_empty()).cloned().collect();
    bags.sort();
    let all = g.all_vertices();
    let mut splits: Vec<VertexSet> = (0..d.tree_edges().len())
        .map(|e| {
            let c = layout.child_of_edge[e];
            let side: VertexSet = g.vertices().filter(|&v| layout.in_subtree(c, layout.node_of[v])).collect();
            if side.contains(0) {
                all.difference(side)
            } else {
                side
            }
        })
        .collect();
    splits.sort();
    Ok((bags, splits))
}

/// A canonical decomposition with adhesion-width `< a` and bag-width `< b`,
/// found by plain enumeration without splitting into components.
pub fn exists_by_enumeration(
    g: &MultiGraph,
    a: usize,
    b: usize,
    budget: &SolverBudget,
) -> Result<Option<TreeCutDecomposition>, SolverError> {
    let mut found = None;
    canonical_decompositions(g, budget, |d| {
        let (adhw, bagw) = ab_widths(g, d, &Layout::new_unchecked(g, d));
        if adhw < a && bagw < b {
            found = Some(d.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// The inclusion-minimal pairs `(adhesion-width, bag-width)` over all
/// canonical decompositions, sorted. A decomposition with widths below
/// `(a, b)` exists iff some pair is componentwise below it.
pub fn ab_width_frontier(g: &MultiGraph, budget: &SolverBudget) -> Result<Vec<(usize, usize)>, SolverError> {
    let mut seen = BTreeSet::new();
    canonical_decompositions(g, budget, |d| {
        seen.insert(ab_widths(g, d, &Layout::new_unchecked(g, d)));
        ControlFlow::Continue(())
    })?;
    let frontier = seen
        .iter()
        .copied()
        .filter(|&(x, y)| !seen.iter().any(|&(p, q)| (p, q) != (x, y) && p <= x && q <= y))
        .collect();
    Ok(frontier)
}

/// Minimum Wollan width over all canonical decompositions.
pub fn wollan_tcw(g: &MultiGraph, budget: &SolverBudget) -> Result<usize, SolverError> {
    let mut best = usize::MAX;
    canonical_decompositions(g, budget, |d| {
        let layout = Layout::new_unchecked(g, d);
        // the largest edge adhesion is a lower bound on the width
        let floor = edge_adhesions(g, &layout).iter().map(Vec::len).max().unwrap_or(0);
        if floor < best {
            best = best.min(report(g, d, &layout).wollan);
        }
        ControlFlow::Continue(())
    })?;
    Ok(best)
}
