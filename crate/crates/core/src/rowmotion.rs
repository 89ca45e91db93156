//! Antichain and ideal rowmotion, toggles, and orbit enumeration.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nodeset::{NodeId, NodeSet};
use crate::poset::Poset;
use crate::tree::RootedTree;

/// Default cap on `#𝒜(T)` for exhaustive orbit enumeration.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// A rowmotion orbit on antichains, rotated so that its lexicographically
/// smallest antichain comes first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orbit {
    antichains: Vec<NodeSet>,
    contains_root: bool,
}

impl Orbit {
    /// Canonicalizes a cyclic sequence of antichains for `tree`.
    fn from_cycle(tree: &RootedTree, mut antichains: Vec<NodeSet>) -> Self {
        let start = antichains
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        antichains.rotate_left(start);
        let root = NodeSet::singleton(tree.root());
        let contains_root = antichains.contains(&root);
        Self {
            antichains,
            contains_root,
        }
    }

    pub fn antichains(&self) -> &[NodeSet] {
        &self.antichains
    }

    pub fn len(&self) -> usize {
        self.antichains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.antichains.is_empty()
    }

    /// `δ`: whether `{0̂}` (equivalently `∅`) lies on the orbit.
    pub fn contains_root(&self) -> bool {
        self.contains_root
    }

    pub fn delta(&self) -> u8 {
        u8::from(self.contains_root)
    }

    pub fn representative(&self) -> &NodeSet {
        &self.antichains[0]
    }

    pub fn contains(&self, a: &NodeSet) -> bool {
        self.antichains.contains(a)
    }

    /// The orbit under ideal rowmotion: each antichain mapped to its down-set.
    pub fn ideals(&self, tree: &RootedTree) -> Vec<NodeSet> {
        self.antichains
            .iter()
            .map(|a| tree.down_set(a).expect("orbit members are valid node sets"))
            .collect()
    }

    pub fn dump(&self, index: usize) -> OrbitDump {
        OrbitDump {
            index,
            size: self.len(),
            delta: self.delta(),
            antichains: self.antichains.iter().map(NodeSet::to_vec).collect(),
        }
    }
}

/// JSON record for one orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDump {
    pub index: usize,
    pub size: usize,
    pub delta: u8,
    pub antichains: Vec<Vec<NodeId>>,
}

// Unchecked step; callers validate `a` once.
pub(crate) fn rho_step(tree: &RootedTree, a: &NodeSet) -> NodeSet {
    let poset = tree.poset();
    let down = poset.down_set(a).expect("antichain ids are in range");
    poset.min_outside_ideal(&down)
}

/// Antichain rowmotion `ρ(A) = min{x ∉ A↓}`.
pub fn rho_antichain(tree: &RootedTree, a: &NodeSet) -> Result<NodeSet> {
    tree.poset().check_antichain(a)?;
    Ok(rho_step(tree, a))
}

/// Ideal rowmotion `ρ̂(L) = ρ(max L)↓`.
pub fn rho_ideal(tree: &RootedTree, l: &NodeSet) -> Result<NodeSet> {
    tree.poset().rowmotion_ideal(l)
}

/// The toggle `t_x`: `L △ {x}` when that is again an ideal, else `L`.
pub fn toggle(poset: &Poset, l: &NodeSet, x: NodeId) -> Result<NodeSet> {
    poset.check_node(x)?;
    poset.check_ideal(l)?;
    Ok(toggle_unchecked(poset, l, x))
}

fn toggle_unchecked(poset: &Poset, l: &NodeSet, x: NodeId) -> NodeSet {
    let flip = if l.contains(x) {
        !poset.upper_covers(x).iter().any(|&y| l.contains(y))
    } else {
        poset.lower_covers(x).iter().all(|&y| l.contains(y))
    };
    if flip {
        l.toggled(x)
    } else {
        l.clone()
    }
}

/// `t_{x₁} t_{x₂} ⋯ t_{x_p}(L)`, composed right to left.
pub fn rho_via_toggles(poset: &Poset, l: &NodeSet, ext: &[NodeId]) -> Result<NodeSet> {
    if !poset.is_linear_extension(ext) {
        return Err(Error::NotLinearExtension);
    }
    poset.check_ideal(l)?;
    Ok(ext
        .iter()
        .rev()
        .fold(l.clone(), |acc, &x| toggle_unchecked(poset, &acc, x)))
}

/// The ρ-orbit through `a`.
pub fn orbit_of(tree: &RootedTree, a: &NodeSet) -> Result<Orbit> {
    tree.poset().check_antichain(a)?;
    Ok(orbit_unchecked(tree, a))
}

fn orbit_unchecked(tree: &RootedTree, a: &NodeSet) -> Orbit {
    let mut cycle = vec![a.clone()];
    let mut cur = rho_step(tree, a);
    while &cur != a {
        let next = rho_step(tree, &cur);
        cycle.push(cur);
        cur = next;
    }
    Orbit::from_cycle(tree, cycle)
}

/// Partitions `𝒜(T)` into ρ-orbits, ordered by canonical representative.
pub fn all_orbits(tree: &RootedTree, budget: u128) -> Result<Vec<Orbit>> {
    let needed = tree.count_antichains();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut all = tree.antichains();
    all.sort_unstable();
    let mut seen: HashSet<NodeSet> = HashSet::with_capacity(all.len());
    let mut orbits = Vec::new();
    for a in &all {
        if seen.contains(a) {
            continue;
        }
        let orbit = orbit_unchecked(tree, a);
        seen.extend(orbit.antichains.iter().cloned());
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Checks that `antichains` is a ρ-cycle of `tree` and canonicalizes it.
pub fn orbit_from_cycle(tree: &RootedTree, antichains: Vec<NodeSet>) -> Result<Orbit> {
    if antichains.is_empty() {
        return Err(Error::InconsistentOrbit("empty orbit".into()));
    }
    for a in &antichains {
        tree.poset().check_antichain(a)?;
    }
    for (i, a) in antichains.iter().enumerate() {
        let next = &antichains[(i + 1) % antichains.len()];
        if &rho_step(tree, a) != next {
            return Err(Error::InconsistentOrbit(format!(
                "rowmotion of member {i} is not the next member"
            )));
        }
    }
    let distinct: HashSet<&NodeSet> = antichains.iter().collect();
    if distinct.len() != antichains.len() {
        return Err(Error::InconsistentOrbit("repeated antichain".into()));
    }
    Ok(Orbit::from_cycle(tree, antichains))
}
