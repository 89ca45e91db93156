//! Compact sets of node ids.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Dense node identifier. Trees number their nodes in preorder, root = 0.
pub type NodeId = usize;

/// A set of node ids backed by a bit vector.
///
/// The word vector never ends in a zero word, so derived equality and
/// hashing agree with set equality. Ordering is lexicographic on the
/// increasing id sequence, which makes `∅` the smallest set.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct NodeSet {
    words: Vec<u64>,
}

impl NodeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(x: NodeId) -> Self {
        let mut s = Self::new();
        s.insert(x);
        s
    }

    pub fn contains(&self, x: NodeId) -> bool {
        self.words
            .get(x / 64)
            .is_some_and(|w| w & (1u64 << (x % 64)) != 0)
    }

    pub fn insert(&mut self, x: NodeId) -> bool {
        let (w, b) = (x / 64, x % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let was = self.words[w] & (1u64 << b) != 0;
        self.words[w] |= 1u64 << b;
        !was
    }

    pub fn remove(&mut self, x: NodeId) -> bool {
        let (w, b) = (x / 64, x % 64);
        if w >= self.words.len() {
            return false;
        }
        let was = self.words[w] & (1u64 << b) != 0;
        self.words[w] &= !(1u64 << b);
        self.trim();
        was
    }

    /// Symmetric difference with a single element.
    pub fn toggled(&self, x: NodeId) -> Self {
        let mut s = self.clone();
        if !s.remove(x) {
            s.insert(x);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn union_with(&mut self, other: &NodeSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn intersects(&self, other: &NodeSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<NodeId> {
        self.iter().collect()
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<NodeId> for NodeSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        let mut s = NodeSet::new();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl Ord for NodeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for NodeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for NodeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for NodeSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let ids = Vec::<NodeId>::deserialize(deserializer)?;
        Ok(ids.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_keeps_canonical_form() {
        let mut s = NodeSet::new();
        s.insert(130);
        s.insert(3);
        assert_eq!(s.len(), 2);
        s.remove(130);
        assert_eq!(s, NodeSet::singleton(3));
        s.remove(3);
        assert_eq!(s, NodeSet::new());
        assert!(s.is_empty());
    }

    #[test]
    fn lexicographic_order_on_sorted_ids() {
        let a: NodeSet = [1, 5].into_iter().collect();
        let b: NodeSet = [2].into_iter().collect();
        let c: NodeSet = [1].into_iter().collect();
        assert!(NodeSet::new() < c);
        assert!(c < a);
        assert!(a < b);
    }

    #[test]
    fn iter_crosses_word_boundaries() {
        let s: NodeSet = [0, 63, 64, 200].into_iter().collect();
        assert_eq!(s.to_vec(), vec![0, 63, 64, 200]);
        assert!(s.is_subset(&[0, 1, 63, 64, 200].into_iter().collect()));
        assert!(!s.is_subset(&[0, 63].into_iter().collect()));
    }
}
