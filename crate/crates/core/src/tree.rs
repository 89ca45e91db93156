//! Rooted trees with a fixed planar embedding, their leaf intervals and
//! branch decomposition.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nodeset::{NodeId, NodeSet};
use crate::poset::Poset;

/// An interval `[lo, hi]` of leaf labels, 1-based and inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub const fn new(lo: usize, hi: usize) -> Self {
        Self { lo, hi }
    }

    pub const fn single(i: usize) -> Self {
        Self { lo: i, hi: i }
    }

    pub const fn len(&self) -> usize {
        self.hi + 1 - self.lo
    }

    pub const fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }

    pub const fn contains(&self, i: usize) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub const fn is_subset(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub const fn is_proper_subset(&self, other: &Interval) -> bool {
        self.is_subset(other) && (self.lo != other.lo || self.hi != other.hi)
    }

    pub const fn is_disjoint(&self, other: &Interval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    pub fn rows(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl From<Interval> for [usize; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

impl From<[usize; 2]> for Interval {
    fn from([lo, hi]: [usize; 2]) -> Self {
        Interval { lo, hi }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// One branch `B_I`: the nodes whose leaf-descendant interval is `I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSpec {
    pub interval: Interval,
    pub beta: usize,
    /// `x_{I,1}, …, x_{I,β}`, from the top of the branch downward.
    pub nodes: Vec<NodeId>,
}

/// An unlabeled planar rooted tree: a node and its ordered children.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub children: Vec<Shape>,
}

impl Shape {
    pub fn leaf() -> Self {
        Self::default()
    }

    pub fn node(children: Vec<Shape>) -> Self {
        Self { children }
    }

    /// A chain of `len >= 1` nodes whose top carries `top_children`.
    pub fn chain_with_top(len: usize, top_children: Vec<Shape>) -> Self {
        assert!(len >= 1, "chain needs at least one node");
        let mut s = Shape::node(top_children);
        for _ in 1..len {
            s = Shape::node(vec![s]);
        }
        s
    }

    pub fn chain(len: usize) -> Self {
        Self::chain_with_top(len, Vec::new())
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Shape::node_count).sum::<usize>()
    }

    /// Parses nested-parentheses notation; whitespace is ignored.
    pub fn parse(s: &str) -> Result<Self> {
        let mut stack: Vec<Shape> = Vec::new();
        let mut done: Option<Shape> = None;
        let mut seen_any = false;
        for (pos, ch) in s.char_indices() {
            match ch {
                c if c.is_whitespace() => {}
                '(' => {
                    if done.is_some() {
                        return Err(Error::Parse {
                            position: pos,
                            message: "text after the root node".into(),
                        });
                    }
                    seen_any = true;
                    stack.push(Shape::leaf());
                }
                ')' => {
                    let node = stack.pop().ok_or_else(|| Error::Parse {
                        position: pos,
                        message: "unbalanced ')'".into(),
                    })?;
                    match stack.last_mut() {
                        Some(parent) => parent.children.push(node),
                        None => done = Some(node),
                    }
                }
                other => {
                    return Err(Error::Parse {
                        position: pos,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
        if !seen_any {
            return Err(Error::EmptyInput);
        }
        if !stack.is_empty() {
            return Err(Error::Parse {
                position: s.len(),
                message: format!("{} unclosed '('", stack.len()),
            });
        }
        Ok(done.expect("balanced input yields a root"))
    }

    /// Canonical representative of the isomorphism class (children sorted).
    pub fn canonical(&self) -> Shape {
        let mut children: Vec<Shape> = self.children.iter().map(Shape::canonical).collect();
        children.sort();
        Shape { children }
    }

    /// All rooted trees with exactly `n` nodes, one planar embedding per
    /// isomorphism class.
    pub fn all_with_nodes(n: usize) -> Vec<Shape> {
        let mut by_size: Vec<Vec<Shape>> = vec![Vec::new(), vec![Shape::leaf()]];
        for size in 2..=n {
            let mut out = Vec::new();
            let mut picked = Vec::new();
            forests(&by_size, size - 1, (size - 1, usize::MAX), &mut picked, &mut out);
            by_size.push(out);
        }
        if n == 0 {
            return Vec::new();
        }
        by_size.swap_remove(n)
    }

    /// A uniformly random recursive tree with `n >= 1` nodes.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Shape {
        assert!(n >= 1);
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 1..n {
            let p = rng.random_range(0..v);
            kids[p].push(v);
        }
        fn build(v: usize, kids: &[Vec<usize>]) -> Shape {
            Shape::node(kids[v].iter().map(|&c| build(c, kids)).collect())
        }
        build(0, &kids)
    }
}

// Multisets of trees with `remaining` total nodes, chosen in non-increasing
// (size, index) order so each forest is produced once.
fn forests(
    by_size: &[Vec<Shape>],
    remaining: usize,
    bound: (usize, usize),
    picked: &mut Vec<Shape>,
    out: &mut Vec<Shape>,
) {
    if remaining == 0 {
        out.push(Shape::node(picked.clone()));
        return;
    }
    for size in (1..=remaining.min(bound.0)).rev() {
        let top = if size == bound.0 { bound.1 } else { usize::MAX };
        for (idx, t) in by_size[size].iter().enumerate() {
            if idx > top {
                break;
            }
            picked.push(t.clone());
            forests(by_size, remaining - size, (size, idx), picked, out);
            picked.pop();
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for c in &self.children {
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A rooted tree: a poset with a unique minimal element whose Hasse diagram
/// is a tree, together with a planar embedding that labels leaves `1..=n`
/// from left to right.
///
/// Node ids are assigned in preorder, so the root is `0`.
#[derive(Clone, Debug)]
pub struct RootedTree {
    poset: Poset,
    shape: Shape,
    parent: Vec<Option<NodeId>>,
    children: Vec<Vec<NodeId>>,
    leaves: Vec<NodeId>,
    interval: Vec<Interval>,
    branches: Vec<IntervalSpec>,
    branch_of: Vec<(usize, usize)>,
}

impl RootedTree {
    pub fn parse(notation: &str) -> Result<Self> {
        Ok(Self::from_shape(&Shape::parse(notation)?))
    }

    pub fn from_shape(shape: &Shape) -> Self {
        let mut parent = Vec::new();
        let mut children: Vec<Vec<NodeId>> = Vec::new();
        let mut stack: Vec<(&Shape, Option<NodeId>)> = vec![(shape, None)];
        while let Some((s, p)) = stack.pop() {
            let id = parent.len();
            parent.push(p);
            children.push(Vec::new());
            if let Some(p) = p {
                children[p].push(id);
            }
            for c in s.children.iter().rev() {
                stack.push((c, Some(id)));
            }
        }
        let n = parent.len();

        let mut leaves = Vec::new();
        let mut interval = vec![Interval::single(0); n];
        // preorder visits leaves left to right; children ids exceed parents
        for v in 0..n {
            if children[v].is_empty() {
                leaves.push(v);
                interval[v] = Interval::single(leaves.len());
            }
        }
        for v in (0..n).rev() {
            if let (Some(first), Some(last)) = (children[v].first(), children[v].last()) {
                interval[v] = Interval::new(interval[*first].lo, interval[*last].hi);
            }
        }

        let mut groups: BTreeMap<Interval, Vec<NodeId>> = BTreeMap::new();
        for v in 0..n {
            groups.entry(interval[v]).or_default().push(v);
        }
        let mut branches: Vec<IntervalSpec> = groups
            .into_iter()
            .map(|(interval, mut nodes)| {
                // ids grow with depth along a branch; list top first
                nodes.sort_unstable_by(|a, b| b.cmp(a));
                IntervalSpec {
                    interval,
                    beta: nodes.len(),
                    nodes,
                }
            })
            .collect();
        branches.sort_by_key(|b| (b.interval.len(), b.interval.lo));
        let mut branch_of = vec![(0, 0); n];
        for (bi, b) in branches.iter().enumerate() {
            for (j, &v) in b.nodes.iter().enumerate() {
                branch_of[v] = (bi, j + 1);
            }
        }

        let covers: Vec<(NodeId, NodeId)> = (0..n)
            .filter_map(|v| parent[v].map(|p| (p, v)))
            .collect();
        let poset = Poset::from_covers(n, &covers).expect("tree covers form a valid poset");

        Self {
            poset,
            shape: shape.clone(),
            parent,
            children,
            leaves,
            interval,
            branches,
            branch_of,
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn notation(&self) -> String {
        self.shape.to_string()
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub const fn root(&self) -> NodeId {
        0
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent[v]
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.children[v].is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    /// The leaf carrying label `i` (1-based).
    pub fn leaf(&self, label: usize) -> NodeId {
        self.leaves[label - 1]
    }

    pub fn leaf_label(&self, v: NodeId) -> Option<usize> {
        self.is_leaf(v).then(|| self.interval[v].lo)
    }

    /// Leaf-descendant interval of `v`.
    pub fn interval_of(&self, v: NodeId) -> Interval {
        self.interval[v]
    }

    /// `(branch, j)` such that `v = x_{I,j}`, with `j = 1` at the top.
    pub fn branch_position(&self, v: NodeId) -> (&IntervalSpec, usize) {
        let (b, j) = self.branch_of[v];
        (&self.branches[b], j)
    }

    pub fn branch_index(&self, v: NodeId) -> usize {
        self.branch_of[v].0
    }

    /// The family `ℐ(T)`, sorted by interval length then left end.
    pub fn intervals(&self) -> &[IntervalSpec] {
        &self.branches
    }

    pub fn branch(&self, interval: Interval) -> Option<&IntervalSpec> {
        self.branches.iter().find(|b| b.interval == interval)
    }

    pub fn beta(&self, interval: Interval) -> Option<usize> {
        self.branch(interval).map(|b| b.beta)
    }

    pub fn down_set(&self, q: &NodeSet) -> Result<NodeSet> {
        self.poset.down_set(q)
    }

    /// `#𝒜(T)` via the recursion `#𝒜(T) = 1 + ∏ #𝒜(Tᵢ)` over the subtrees
    /// hanging off the root (saturating at `u128::MAX`).
    pub fn count_antichains(&self) -> u128 {
        let mut count = vec![0u128; self.len()];
        for v in (0..self.len()).rev() {
            count[v] = if self.is_leaf(v) {
                2
            } else {
                self.children[v]
                    .iter()
                    .fold(1u128, |acc, &c| acc.saturating_mul(count[c]))
                    .saturating_add(1)
            };
        }
        count[0]
    }

    /// All antichains, built from the subtree recursion.
    pub fn antichains(&self) -> Vec<NodeSet> {
        let mut per: Vec<Vec<NodeSet>> = vec![Vec::new(); self.len()];
        for v in (0..self.len()).rev() {
            let mut prod = vec![NodeSet::new()];
            for &c in &self.children[v] {
                let sub = std::mem::take(&mut per[c]);
                let mut next = Vec::with_capacity(prod.len() * sub.len());
                for a in &prod {
                    for b in &sub {
                        let mut s = a.clone();
                        s.union_with(b);
                        next.push(s);
                    }
                }
                prod = next;
            }
            prod.push(NodeSet::singleton(v));
            per[v] = prod;
        }
        per.swap_remove(0)
    }

    /// The unique maximal partition of `interval` into members of `ℐ(T)`;
    /// with `proper`, the partition `{interval}` itself is excluded.
    pub fn interval_partition(&self, interval: Interval, proper: bool) -> Result<Vec<Interval>> {
        let n = self.leaf_count();
        if interval.lo < 1 || interval.lo > interval.hi || interval.hi > n {
            return Err(Error::InvalidInterval(interval.lo, interval.hi));
        }
        if proper {
            if interval.is_singleton() {
                return Err(Error::NoProperPartition(interval.lo));
            }
            if self.branch(interval).is_none() {
                return Err(Error::InvalidInterval(interval.lo, interval.hi));
            }
        }
        let mut out = Vec::new();
        let mut pos = interval.lo;
        while pos <= interval.hi {
            let best = self
                .branches
                .iter()
                .map(|b| b.interval)
                .filter(|j| j.lo == pos && j.hi <= interval.hi && !(proper && *j == interval))
                .max_by_key(|j| j.hi)
                .expect("singletons always belong to the family");
            out.push(best);
            pos = best.hi + 1;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            nodes: (0..self.len()).collect(),
            covers: self.poset.covers(),
            leaf_labels: self
                .leaves
                .iter()
                .enumerate()
                .map(|(i, &v)| [v, i + 1])
                .collect(),
            intervals: self.branches.clone(),
        }
    }
}

/// Serialized form of a tree; field order is stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TreeJson {
    pub nodes: Vec<NodeId>,
    pub covers: Vec<(NodeId, NodeId)>,
    /// `[node, label]` pairs in label order.
    pub leaf_labels: Vec<[usize; 2]>,
    pub intervals: Vec<IntervalSpec>,
}
