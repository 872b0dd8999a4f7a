use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{CertificateError, OrientedSeparation, Tangle};
use crate::graph::{GraphError, MultiGraph, Separation, Vertex};
use crate::vertex_set::VertexSet;

/// Largest separation count `find_tangle` will search by default.
pub const DEFAULT_SEPARATION_LIMIT: usize = 1 << 12;

const ENUMERATION_LIMIT: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TangleViolation {
    ZeroParameter,
    TooLarge { n: usize },
    /// Member `index` is not a two-sided near-partition of `V(G)`.
    MalformedSeparation { index: usize },
    OrderTooLarge { index: usize, order: usize },
    Duplicate { first: usize, second: usize },
    /// The separation with this side (the one avoiding vertex 0) is not oriented.
    Missing { side: VertexSet },
    /// `to(first) ∩ to(second) = ∅`; `first == second` is possible.
    Inconsistent { first: usize, second: usize },
    /// These members form a star in `Σ_{a,b}`.
    ContainsStar { members: Vec<usize> },
}

/// All separations of order `< a`, each once, with `side_a` the side that
/// avoids vertex 0, in increasing bit order of `side_a`; `{∅, V}` comes first.
pub fn enumerate_separations(g: &MultiGraph, a: usize) -> Result<Vec<Separation>, GraphError> {
    if g.vertex_count() > ENUMERATION_LIMIT {
        return Err(GraphError::TooLarge { n: g.vertex_count(), limit: ENUMERATION_LIMIT });
    }
    let all = g.all_vertices();
    let rest = all.difference(VertexSet::singleton(0));
    Ok(rest
        .subsets()
        .filter(|&side| g.boundary_size(side) < a)
        .map(|side| Separation { side_a: side, side_b: all.difference(side) })
        .collect())
}

/// An oriented separation with its boundary cached.
#[derive(Clone, Debug)]
pub(crate) struct Member {
    pub sep: OrientedSeparation,
    pub boundary: FixedBitSet,
    pub order: usize,
}

impl Member {
    pub fn new(g: &MultiGraph, sep: OrientedSeparation) -> Self {
        let mut boundary = FixedBitSet::with_capacity(g.edge_count());
        for e in g.boundary_of(sep.from) {
            boundary.insert(e);
        }
        let order = boundary.count_ones(..);
        Member { sep, boundary, order }
    }
}

/// Depth-first search for a star in `Σ_{a,b}` among `members` (which must be
/// pairwise consistent), trying indices in increasing order. If `seed` is
/// given, only stars containing it are considered.
pub(crate) fn find_sigma_star(
    members: &[Member],
    candidates: &[usize],
    n: usize,
    a: usize,
    b: usize,
    seed: Option<usize>,
) -> Option<Vec<usize>> {
    struct Search<'a> {
        members: &'a [Member],
        candidates: &'a [usize],
        n: usize,
        a: usize,
        b: usize,
        chosen: Vec<usize>,
    }
    impl Search<'_> {
        fn accept(&mut self, i: usize, from: VertexSet, bold: &FixedBitSet, start: usize) -> bool {
            let m = &self.members[i];
            let from = from.union(m.sep.from);
            let mut bold = bold.clone();
            if m.order >= 3 {
                bold.union_with(&m.boundary);
            }
            if bold.count_ones(..) >= self.a {
                return false;
            }
            self.chosen.push(i);
            if self.n - from.len() < self.b || self.extend(from, &bold, start) {
                return true;
            }
            self.chosen.pop();
            false
        }

        fn extend(&mut self, from: VertexSet, bold: &FixedBitSet, start: usize) -> bool {
            for pos in start..self.candidates.len() {
                let j = self.candidates[pos];
                let m = &self.members[j];
                if self.chosen.contains(&j) || m.sep.from.is_empty() || !m.sep.from.is_disjoint(from) {
                    continue;
                }
                if self.accept(j, from, bold, pos + 1) {
                    return true;
                }
            }
            false
        }
    }

    let mut search = Search { members, candidates, n, a, b, chosen: Vec::new() };
    let empty = FixedBitSet::with_capacity(members.first().map_or(0, |m| m.boundary.len()));
    let found = match seed {
        Some(s) => search.accept(s, VertexSet::empty(), &empty, 0),
        None => (0..candidates.len()).any(|pos| search.accept(candidates[pos], VertexSet::empty(), &empty, pos + 1)),
    };
    if found {
        let mut chosen = search.chosen;
        chosen.sort_unstable();
        Some(chosen)
    } else {
        None
    }
}

/// Whether `members` form a star in `Σ_{a,b}`.
pub fn is_sigma_star(g: &MultiGraph, a: usize, b: usize, members: &[OrientedSeparation]) -> bool {
    if members.is_empty() || g.check_small().is_err() {
        return false;
    }
    let all = g.all_vertices();
    let valid = members.iter().all(|s| s.from.is_disjoint(s.to) && s.from.union(s.to) == all);
    if !valid {
        return false;
    }
    let consistent = members.iter().all(|x| members.iter().all(|y| !x.to.is_disjoint(y.to)));
    let star = members
        .iter()
        .enumerate()
        .all(|(i, x)| members[i + 1..].iter().all(|y| x == y || x.from.is_disjoint(y.from)));
    if !consistent || !star {
        return false;
    }
    let mut bold = FixedBitSet::with_capacity(g.edge_count());
    let mut meet = all;
    for s in members {
        let m = Member::new(g, *s);
        if m.order >= a {
            return false;
        }
        if m.order >= 3 {
            bold.union_with(&m.boundary);
        }
        meet = meet.intersection(s.to);
    }
    bold.count_ones(..) < a && meet.len() < b
}

/// Key identifying the unoriented separation: the side avoiding vertex 0.
fn key(s: &OrientedSeparation) -> VertexSet {
    if s.from.contains(0) {
        s.to
    } else {
        s.from
    }
}

/// Checks, in this order: well-formed members, orders below `a`, exactly one
/// orientation per separation of order `< a`, consistency (a member paired
/// with itself included) and absence of stars from `Σ_{a,b}`.
pub fn verify_tangle(g: &MultiGraph, t: &Tangle) -> Result<(), TangleViolation> {
    if t.a == 0 || t.b == 0 {
        return Err(TangleViolation::ZeroParameter);
    }
    if g.vertex_count() > ENUMERATION_LIMIT {
        return Err(TangleViolation::TooLarge { n: g.vertex_count() });
    }
    let all = g.all_vertices();
    for (index, s) in t.oriented.iter().enumerate() {
        if !s.from.is_disjoint(s.to) || s.from.union(s.to) != all {
            return Err(TangleViolation::MalformedSeparation { index });
        }
    }
    let members: Vec<Member> = t.oriented.iter().map(|&s| Member::new(g, s)).collect();
    for (index, m) in members.iter().enumerate() {
        if m.order >= t.a {
            return Err(TangleViolation::OrderTooLarge { index, order: m.order });
        }
    }
    let mut seen: HashMap<VertexSet, usize> = HashMap::new();
    for (i, s) in t.oriented.iter().enumerate() {
        if let Some(&first) = seen.get(&key(s)) {
            return Err(TangleViolation::Duplicate { first, second: i });
        }
        seen.insert(key(s), i);
    }
    let expected = enumerate_separations(g, t.a).map_err(|_| TangleViolation::TooLarge { n: g.vertex_count() })?;
    if let Some(missing) = expected.iter().find(|s| !seen.contains_key(&s.side_a)) {
        return Err(TangleViolation::Missing { side: missing.side_a });
    }
    for (i, x) in t.oriented.iter().enumerate() {
        for (j, y) in t.oriented.iter().enumerate().skip(i) {
            if x.to.is_disjoint(y.to) {
                return Err(TangleViolation::Inconsistent { first: i, second: j });
            }
        }
    }
    let candidates: Vec<usize> = (0..members.len()).collect();
    match find_sigma_star(&members, &candidates, g.vertex_count(), t.a, t.b, None) {
        Some(star) => Err(TangleViolation::ContainsStar { members: star }),
        None => Ok(()),
    }
}

/// Orients every separation of order `< a` toward the side holding `v`.
pub fn vertex_tangle(g: &MultiGraph, a: usize, b: usize, v: Vertex) -> Result<Tangle, GraphError> {
    if !g.has_vertex(v) {
        return Err(GraphError::BadVertex(v));
    }
    let oriented = enumerate_separations(g, a)?
        .into_iter()
        .map(|s| {
            let forward = OrientedSeparation { from: s.side_a, to: s.side_b };
            if s.side_b.contains(v) {
                forward
            } else {
                forward.reversed()
            }
        })
        .collect();
    Ok(Tangle { a, b, oriented })
}

pub fn find_tangle(g: &MultiGraph, a: usize, b: usize) -> Result<Option<Tangle>, CertificateError> {
    find_tangle_with_limit(g, a, b, DEFAULT_SEPARATION_LIMIT)
}

/// Backtracking over orientations. Orientations whose target side has fewer
/// than `b` vertices are excluded up front (on their own they form a star in
/// `Σ_{a,b}`); each assignment prunes inconsistent options of the remaining
/// separations and is rejected if it completes a star in `Σ_{a,b}`.
pub fn find_tangle_with_limit(
    g: &MultiGraph,
    a: usize,
    b: usize,
    limit: usize,
) -> Result<Option<Tangle>, CertificateError> {
    if a == 0 || b == 0 {
        return Err(CertificateError::PreconditionViolated("a and b must be positive".into()));
    }
    g.check_small()?;
    if g.vertex_count() > ENUMERATION_LIMIT {
        return Err(CertificateError::BudgetExceeded { separations: usize::MAX, limit });
    }
    let separations = enumerate_separations(g, a)?;
    if separations.len() > limit {
        return Err(CertificateError::BudgetExceeded { separations: separations.len(), limit });
    }
    // member 2i orients separation i toward side_b, member 2i+1 toward side_a
    let members: Vec<Member> = separations
        .iter()
        .flat_map(|s| {
            let forward = OrientedSeparation { from: s.side_a, to: s.side_b };
            [Member::new(g, forward), Member::new(g, forward.reversed())]
        })
        .collect();
    let mut domains: Vec<u8> = separations
        .iter()
        .enumerate()
        .map(|(i, _)| (0..2).filter(|&o| members[2 * i + o].sep.to.len() >= b).fold(0, |d, o| d | (1 << o)))
        .collect();
    if domains.iter().any(|&d| d == 0) {
        return Ok(None);
    }
    let mut search = TangleSearch { members: &members, n: g.vertex_count(), a, b, assigned: Vec::new() };
    if !search.run(&mut domains) {
        return Ok(None);
    }
    let mut chosen = search.assigned;
    chosen.sort_unstable();
    let tangle = Tangle { a, b, oriented: chosen.iter().map(|&m| members[m].sep).collect() };
    verify_tangle(g, &tangle)
        .map_err(|v| CertificateError::CertificateCorrupt(format!("search produced a non-tangle: {v:?}")))?;
    Ok(Some(tangle))
}

struct TangleSearch<'a> {
    members: &'a [Member],
    n: usize,
    a: usize,
    b: usize,
    assigned: Vec<usize>,
}

impl TangleSearch<'_> {
    fn run(&mut self, domains: &mut Vec<u8>) -> bool {
        // most constrained unassigned separation first; assigned ones are marked 0b100
        let next = (0..domains.len())
            .filter(|&i| domains[i] & 0b100 == 0)
            .min_by_key(|&i| (domains[i].count_ones(), i));
        let Some(i) = next else { return true };
        for o in 0..2 {
            if domains[i] & (1 << o) == 0 {
                continue;
            }
            let m = 2 * i + o;
            self.assigned.push(m);
            let star = find_sigma_star(self.members, &self.assigned, self.n, self.a, self.b, Some(m));
            if star.is_none() {
                let mut next_domains = domains.clone();
                next_domains[i] = 0b100 | (1 << o);
                if self.propagate(&mut next_domains, m) && self.run(&mut next_domains) {
                    return true;
                }
            }
            self.assigned.pop();
        }
        false
    }

    fn propagate(&self, domains: &mut [u8], m: usize) -> bool {
        let to = self.members[m].sep.to;
        for (j, d) in domains.iter_mut().enumerate() {
            if *d & 0b100 != 0 {
                continue;
            }
            for o in 0..2 {
                if *d & (1 << o) != 0 && self.members[2 * j + o].sep.to.is_disjoint(to) {
                    *d &= !(1 << o);
                }
            }
            if *d == 0 {
                return false;
            }
        }
        true
    }
}
