//! Fixed-universe vertex sets backed by 64-bit words.
//!
//! A [`VertexSet`] always belongs to a universe `0..n`. Bits at positions
//! `>= n` are kept zero so word-wise complement and population counts stay
//! exact.

use std::fmt;

use serde::{Serialize, Serializer};

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Mask of the valid bits in the last word of a universe of size `n`.
#[inline]
pub(crate) fn tail_mask(n: usize) -> u64 {
    match n % WORD_BITS {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; words_for(universe)],
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut words = vec![u64::MAX; words_for(universe)];
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(universe);
        }
        VertexSet {
            universe,
            words,
            len: universe,
        }
    }

    /// Builds a set from vertex indices. Panics on an index outside the universe.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(universe: usize, vertices: I) -> Self {
        let mut s = VertexSet::empty(universe);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    pub(crate) fn from_words(universe: usize, mut words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(universe));
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(universe);
        }
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        VertexSet { universe, words, len }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    /// Returns `true` if `v` was newly inserted.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(
            v < self.universe,
            "vertex {v} outside universe of size {}",
            self.universe
        );
        let w = &mut self.words[v / WORD_BITS];
        let bit = 1u64 << (v % WORD_BITS);
        if *w & bit == 0 {
            *w |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    /// Returns `true` if `v` was present.
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let w = &mut self.words[v / WORD_BITS];
        let bit = 1u64 << (v % WORD_BITS);
        if *w & bit != 0 {
            *w &= !bit;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
        self.len = 0;
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_universe(&self, other: &VertexSet) {
        assert_eq!(self.universe, other.universe, "vertex sets over different universes");
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.check_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        VertexSet::from_words(self.universe, words)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.check_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        VertexSet::from_words(self.universe, words)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.check_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        VertexSet::from_words(self.universe, words)
    }

    pub fn complement(&self) -> VertexSet {
        let words = self.words.iter().map(|w| !w).collect();
        VertexSet::from_words(self.universe, words)
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        self.recount();
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.recount();
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        self.recount();
    }

    /// `|self ∩ other|` without allocating.
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.check_universe(other);
        intersection_count(&self.words, &other.words)
    }

    /// `|self ∩ row|` for a raw adjacency row of the same universe.
    pub(crate) fn intersection_len_words(&self, row: &[u64]) -> usize {
        intersection_count(&self.words, row)
    }

    pub(crate) fn intersect_words(&self, row: &[u64]) -> VertexSet {
        let words = self.words.iter().zip(row).map(|(a, b)| a & b).collect();
        VertexSet::from_words(self.universe, words)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    fn recount(&mut self) {
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }
}

#[inline]
pub(crate) fn intersection_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD_BITS + bit);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

// Serialized as the sorted member list; the universe travels with the
// enclosing record (graph size).
impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_masks_tail_bits() {
        for n in [1, 63, 64, 65, 130] {
            let s = VertexSet::full(n);
            assert_eq!(s.len(), n);
            assert_eq!(s.iter().count(), n);
            assert_eq!(s.complement().len(), 0);
        }
    }

    #[test]
    fn insert_remove_track_len() {
        let mut s = VertexSet::empty(100);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        assert!(s.insert(99));
        assert_eq!(s.len(), 2);
        assert!(s.remove(3));
        assert!(!s.remove(3));
        assert_eq!(s.to_vec(), vec![99]);
    }

    #[test]
    #[should_panic]
    fn insert_out_of_range_panics() {
        VertexSet::empty(5).insert(5);
    }

    proptest! {
        #[test]
        fn cached_len_matches_popcount(
            n in 1usize..200,
            a in proptest::collection::vec(0usize..200, 0..50),
            b in proptest::collection::vec(0usize..200, 0..50),
        ) {
            let sa = VertexSet::from_vertices(n, a.iter().copied().filter(|&v| v < n));
            let sb = VertexSet::from_vertices(n, b.iter().copied().filter(|&v| v < n));
            for s in [sa.union(&sb), sa.intersection(&sb), sa.difference(&sb), sa.complement()] {
                let pop: usize = s.words().iter().map(|w| w.count_ones() as usize).sum();
                prop_assert_eq!(s.len(), pop);
                prop_assert!(s.iter().all(|v| v < n));
            }
            prop_assert_eq!(sa.intersection_len(&sb), sa.intersection(&sb).len());
            prop_assert_eq!(sa.union(&sb).len() + sa.intersection(&sb).len(), sa.len() + sb.len());
        }
    }
}
