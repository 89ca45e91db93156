//! Finite posets given by their cover relations.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::nodeset::{NodeId, NodeSet};

/// A finite poset on `0..len` described by its Hasse diagram.
///
/// The full order relation is cached as per-element down-sets and up-sets
/// (both reflexive), so comparability tests are O(1).
#[derive(Clone, Debug)]
pub struct Poset {
    lower: Vec<Vec<NodeId>>,
    upper: Vec<Vec<NodeId>>,
    below: Vec<NodeSet>,
    above: Vec<NodeSet>,
}

impl Poset {
    /// Builds a poset from cover pairs `(x, y)` meaning `x ⋖ y`.
    ///
    /// Rejects cycles and covers implied by transitivity.
    pub fn from_covers(len: usize, covers: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut lower = vec![Vec::new(); len];
        let mut upper = vec![Vec::new(); len];
        for &(x, y) in covers {
            if x >= len {
                return Err(Error::UnknownNode(x));
            }
            if y >= len {
                return Err(Error::UnknownNode(y));
            }
            if x == y {
                return Err(Error::CyclicCovers);
            }
            if !upper[x].contains(&y) {
                upper[x].push(y);
                lower[y].push(x);
            }
        }
        for v in lower.iter_mut().chain(upper.iter_mut()) {
            v.sort_unstable();
        }

        // Kahn's algorithm gives a topological order or detects a cycle.
        let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
        let mut queue: Vec<NodeId> = (0..len).filter(|&x| indeg[x] == 0).collect();
        let mut topo = Vec::with_capacity(len);
        while let Some(x) = queue.pop() {
            topo.push(x);
            for &y in &upper[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push(y);
                }
            }
        }
        if topo.len() != len {
            return Err(Error::CyclicCovers);
        }

        let mut below = vec![NodeSet::new(); len];
        for &x in &topo {
            let mut s = NodeSet::singleton(x);
            for &y in &lower[x] {
                s.union_with(&below[y]);
            }
            below[x] = s;
        }
        let mut above = vec![NodeSet::new(); len];
        for &x in topo.iter().rev() {
            let mut s = NodeSet::singleton(x);
            for &y in &upper[x] {
                s.union_with(&above[y]);
            }
            above[x] = s;
        }

        // x ⋖ y is redundant when y lies above some other upper cover of x.
        for x in 0..len {
            for &y in &upper[x] {
                if upper[x].iter().any(|&z| z != y && above[z].contains(y)) {
                    return Err(Error::RedundantCover(x, y));
                }
            }
        }

        Ok(Self {
            lower,
            upper,
            below,
            above,
        })
    }

    /// The `len`-element chain `0 ⋖ 1 ⋖ … ⋖ len-1`.
    pub fn chain(len: usize) -> Self {
        let covers: Vec<_> = (1..len).map(|i| (i - 1, i)).collect();
        Self::from_covers(len, &covers).expect("chain covers are valid")
    }

    /// The product `[p] × [q]` with componentwise order.
    ///
    /// Element `(i, j)` (zero-based) has id `i * q + j`.
    pub fn chain_product(p: usize, q: usize) -> Self {
        let mut covers = Vec::new();
        for i in 0..p {
            for j in 0..q {
                let id = i * q + j;
                if i + 1 < p {
                    covers.push((id, id + q));
                }
                if j + 1 < q {
                    covers.push((id, id + 1));
                }
            }
        }
        Self::from_covers(p * q, &covers).expect("grid covers are valid")
    }

    /// Every poset on `0..n` whose order refines the usual order of labels.
    ///
    /// Each one is built by adding `n-1` on top of an order ideal of a
    /// smaller poset, so the list has no duplicates and covers every
    /// isomorphism class at least once.
    pub fn naturally_labeled(n: usize) -> Vec<Poset> {
        let mut level = vec![Self::chain(0)];
        for size in 0..n {
            let mut next = Vec::new();
            for p in &level {
                let base = p.covers();
                for d in p.ideals() {
                    let mut covers = base.clone();
                    covers.extend(p.max_of(&d).iter().map(|m| (m, size)));
                    next.push(Self::from_covers(size + 1, &covers).expect("maxima give valid covers"));
                }
            }
            level = next;
        }
        level
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<NodeId> {
        0..self.len()
    }

    pub fn lower_covers(&self, x: NodeId) -> &[NodeId] {
        &self.lower[x]
    }

    pub fn upper_covers(&self, x: NodeId) -> &[NodeId] {
        &self.upper[x]
    }

    pub fn covers(&self) -> Vec<(NodeId, NodeId)> {
        (0..self.len())
            .flat_map(|x| self.upper[x].iter().map(move |&y| (x, y)))
            .collect()
    }

    /// `x ≤ y`
    pub fn leq(&self, x: NodeId, y: NodeId) -> bool {
        self.below[y].contains(x)
    }

    pub fn comparable(&self, x: NodeId, y: NodeId) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Principal down-set `{z : z ≤ x}`.
    pub fn principal_down(&self, x: NodeId) -> &NodeSet {
        &self.below[x]
    }

    /// Principal up-set `{z : z ≥ x}`.
    pub fn principal_up(&self, x: NodeId) -> &NodeSet {
        &self.above[x]
    }

    pub fn minimal_elements(&self) -> Vec<NodeId> {
        self.elements().filter(|&x| self.lower[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<NodeId> {
        self.elements().filter(|&x| self.upper[x].is_empty()).collect()
    }

    pub fn check_node(&self, x: NodeId) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownNode(x))
        }
    }

    fn check_set(&self, s: &NodeSet) -> Result<()> {
        match s.iter().find(|&x| x >= self.len()) {
            Some(x) => Err(Error::UnknownNode(x)),
            None => Ok(()),
        }
    }

    /// Lower order ideal generated by `q`.
    pub fn down_set(&self, q: &NodeSet) -> Result<NodeSet> {
        self.check_set(q)?;
        let mut out = NodeSet::new();
        for x in q.iter() {
            out.union_with(&self.below[x]);
        }
        Ok(out)
    }

    pub fn check_antichain(&self, a: &NodeSet) -> Result<()> {
        self.check_set(a)?;
        let ids = a.to_vec();
        for (i, &x) in ids.iter().enumerate() {
            for &y in &ids[i + 1..] {
                if self.comparable(x, y) {
                    return Err(Error::NotAntichain(x, y));
                }
            }
        }
        Ok(())
    }

    pub fn check_ideal(&self, l: &NodeSet) -> Result<()> {
        self.check_set(l)?;
        for y in l.iter() {
            if let Some(&x) = self.lower[y].iter().find(|&&x| !l.contains(x)) {
                return Err(Error::NotIdeal(x, y));
            }
        }
        Ok(())
    }

    /// Maximal elements of `q`.
    pub fn max_of(&self, q: &NodeSet) -> NodeSet {
        q.iter()
            .filter(|&x| !q.intersects(&self.above[x].toggled(x)))
            .collect()
    }

    /// Minimal elements of the complement of the ideal `l`.
    ///
    /// Since `l` is downward closed, `x ∉ l` is minimal in the complement
    /// exactly when every element strictly below `x` lies in `l`.
    pub fn min_outside_ideal(&self, l: &NodeSet) -> NodeSet {
        self.elements()
            .filter(|&x| !l.contains(x) && self.lower[x].iter().all(|&y| l.contains(y)))
            .collect()
    }

    /// Smallest-id-first topological order.
    pub fn linear_extension(&self) -> Vec<NodeId> {
        let mut indeg: Vec<usize> = self.lower.iter().map(Vec::len).collect();
        let mut heap: BinaryHeap<Reverse<NodeId>> = self
            .elements()
            .filter(|&x| indeg[x] == 0)
            .map(Reverse)
            .collect();
        let mut out = Vec::with_capacity(self.len());
        while let Some(Reverse(x)) = heap.pop() {
            out.push(x);
            for &y in &self.upper[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    heap.push(Reverse(y));
                }
            }
        }
        out
    }

    pub fn is_linear_extension(&self, ext: &[NodeId]) -> bool {
        if ext.len() != self.len() {
            return false;
        }
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &x) in ext.iter().enumerate() {
            if x >= self.len() || pos[x] != usize::MAX {
                return false;
            }
            pos[x] = i;
        }
        self.covers().iter().all(|&(x, y)| pos[x] < pos[y])
    }

    /// Every lower order ideal, in the order produced by a depth-first
    /// include/exclude walk along the default linear extension.
    pub fn ideals(&self) -> Vec<NodeSet> {
        let ext = self.linear_extension();
        let mut out = Vec::new();
        let mut current = NodeSet::new();
        self.ideals_rec(&ext, 0, &mut current, &mut out);
        out
    }

    fn ideals_rec(&self, ext: &[NodeId], i: usize, cur: &mut NodeSet, out: &mut Vec<NodeSet>) {
        if i == ext.len() {
            out.push(cur.clone());
            return;
        }
        let x = ext[i];
        self.ideals_rec(ext, i + 1, cur, out);
        if self.lower[x].iter().all(|&y| cur.contains(y)) {
            cur.insert(x);
            self.ideals_rec(ext, i + 1, cur, out);
            cur.remove(x);
        }
    }

    /// Ideal rowmotion straight from the definition: `ρ(max L)↓`.
    pub fn rowmotion_ideal(&self, l: &NodeSet) -> Result<NodeSet> {
        self.check_ideal(l)?;
        // ρ(max L) = min of the complement of (max L)↓ = L.
        let next = self.min_outside_ideal(l);
        self.down_set(&next)
    }

    /// Whether every maximal chain has the same length.
    pub fn is_graded(&self) -> bool {
        // longest and shortest path lengths from minimal elements must agree
        // at every maximal element, and all maximal elements must agree.
        let order = self.linear_extension();
        let mut lo = vec![0usize; self.len()];
        let mut hi = vec![0usize; self.len()];
        for &x in &order {
            if let Some(l) = self.lower[x].iter().map(|&y| lo[y] + 1).min() {
                lo[x] = l;
                hi[x] = self.lower[x].iter().map(|&y| hi[y] + 1).max().unwrap();
            }
        }
        let tops = self.maximal_elements();
        let Some(&first) = tops.first() else {
            return true;
        };
        tops.iter().all(|&t| lo[t] == hi[t] && hi[t] == hi[first])
    }
}
