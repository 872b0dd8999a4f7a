//! Fixed-width vertex bitsets for the exponential parts of the crate.
//!
//! Separations, tangles, slab cores and the exact solver all enumerate vertex
//! subsets, so they work on graphs with at most [`VertexSet::CAPACITY`]
//! vertices and represent subsets as a single `u64`.

use std::cmp::Ordering;
use std::fmt;

use crate::graph::Vertex;

/// A subset of `{0, .., 63}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const CAPACITY: usize = 64;

    pub const fn empty() -> Self {
        VertexSet(0)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY, "vertex set capacity exceeded");
        if n == Self::CAPACITY {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: Vertex) -> Self {
        assert!(v < Self::CAPACITY, "vertex set capacity exceeded");
        VertexSet(1u64 << v)
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: Vertex) -> bool {
        v < Self::CAPACITY && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: Vertex) {
        *self = self.with(v);
    }

    pub fn remove(&mut self, v: Vertex) {
        if v < Self::CAPACITY {
            self.0 &= !(1u64 << v);
        }
    }

    #[must_use]
    pub fn with(self, v: Vertex) -> Self {
        self.union(Self::singleton(v))
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest element.
    pub fn first(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Vertex)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<Vertex> {
        self.iter().collect()
    }

    /// Order on the ascending element lists, the order used for every
    /// "lexicographically least" tie-break.
    pub fn lex_cmp(self, other: Self) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        iter.into_iter()
            .fold(VertexSet::empty(), |acc, v| acc.with(v))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as Vertex;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

/// Submask enumeration in increasing numeric order.
pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let current = self.next?;
        self.next = if current == self.universe {
            None
        } else {
            Some((current.wrapping_sub(self.universe)) & self.universe)
        };
        Some(VertexSet(current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_cover_power_set() {
        let s: VertexSet = [1, 3, 4].into_iter().collect();
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.is_subset(s)));
        assert_eq!(all[0], VertexSet::empty());
        assert_eq!(*all.last().unwrap(), s);
    }

    #[test]
    fn lex_order_is_on_sorted_lists() {
        let a: VertexSet = [0, 5].into_iter().collect();
        let b: VertexSet = [1].into_iter().collect();
        assert_eq!(a.lex_cmp(b), Ordering::Less);
        assert!(a > b);
    }

    #[test]
    fn full_and_first() {
        assert_eq!(VertexSet::full(64).len(), 64);
        assert_eq!(VertexSet::full(3).to_vec(), vec![0, 1, 2]);
        assert_eq!(VertexSet::empty().first(), None);
        assert_eq!(VertexSet::singleton(7).first(), Some(7));
    }
}
