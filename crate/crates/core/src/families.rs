//! Named tree families, the graft operation, and closed-form orbit
//! profiles checked against brute force.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::nodeset::NodeSet;
use crate::rowmotion::{all_orbits, Orbit};
use crate::statistics::{homometry_of, orbit_sums, witness_through, HomometryVerdict, Statistic};
use crate::tree::{RootedTree, Shape};

/// Family constructors refuse trees larger than this.
pub const MAX_FAMILY_NODES: u128 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Star(Vec<u64>),
    ExtendedStar { b: u64, alphas: Vec<u64> },
    /// Root branch `a`, inner branch `b` over leaves 1 and 2 with leaf
    /// branches `c`, `d`, and leaf branch `e` for leaf 3.
    ThreeLeaf([u64; 5]),
    Tk(u64),
    Comb(u64),
    ExtendedComb { n: u64, k: u64 },
    Zipper(u64),
    CompleteBinary(u64),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self {
            Family::Star(a) => write!(f, "star:{}", list(a)),
            Family::ExtendedStar { b, alphas } => write!(f, "estar:b={b};{}", list(alphas)),
            Family::ThreeLeaf(p) => write!(f, "three:{}", list(p)),
            Family::Tk(k) => write!(f, "tk:{k}"),
            Family::Comb(n) => write!(f, "comb:{n}"),
            Family::ExtendedComb { n, k } => write!(f, "ecomb:n={n},k={k}"),
            Family::Zipper(n) => write!(f, "zipper:{n}"),
            Family::CompleteBinary(d) => write!(f, "cbt:{d}"),
        }
    }
}

fn parse_num(s: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidFamily(format!("'{s}' is not a non-negative integer")))
}

fn parse_list(s: &str) -> Result<Vec<u64>> {
    s.split(',').map(parse_num).collect()
}

fn parse_key<'a>(s: &'a str, key: &str) -> Result<&'a str> {
    s.trim()
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::InvalidFamily(format!("expected '{key}=' in '{s}'")))
}

/// Parses `star:3,3,2`, `estar:b=2;3,3,2`, `three:a,b,c,d,e`, `tk:3`,
/// `comb:4`, `ecomb:n=3,k=2`, `zipper:2` and `cbt:3`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidFamily(format!("'{s}' has no ':'")))?;
        let fam = match name.trim() {
            "star" => Family::Star(parse_list(args)?),
            "estar" => {
                let (b, alphas) = args
                    .split_once(';')
                    .ok_or_else(|| Error::InvalidFamily("estar needs 'b=B;a1,..,an'".into()))?;
                Family::ExtendedStar {
                    b: parse_num(parse_key(b, "b")?)?,
                    alphas: parse_list(alphas)?,
                }
            }
            "three" => {
                let p = parse_list(args)?;
                Family::ThreeLeaf(
                    p.try_into()
                        .map_err(|_| Error::InvalidFamily("three needs five parameters".into()))?,
                )
            }
            "tk" => Family::Tk(parse_num(args)?),
            "comb" => Family::Comb(parse_num(args)?),
            "ecomb" => {
                let (n, k) = args
                    .split_once(',')
                    .ok_or_else(|| Error::InvalidFamily("ecomb needs 'n=N,k=K'".into()))?;
                Family::ExtendedComb {
                    n: parse_num(parse_key(n, "n")?)?,
                    k: parse_num(parse_key(k, "k")?)?,
                }
            }
            "zipper" => Family::Zipper(parse_num(args)?),
            "cbt" => Family::CompleteBinary(parse_num(args)?),
            other => return Err(Error::InvalidFamily(format!("unknown family '{other}'"))),
        };
        fam.validate()?;
        Ok(fam)
    }
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidFamily(format!("{self}: {m}")));
        match self {
            Family::Star(a) | Family::ExtendedStar { alphas: a, .. } if a.is_empty() => {
                return bad("needs at least one leaf")
            }
            Family::Star(a) | Family::ExtendedStar { alphas: a, .. } if a.iter().any(|&x| x < 2) => {
                return bad("every alpha must be at least 2")
            }
            Family::ExtendedStar { b: 0, .. } => return bad("b must be at least 1"),
            Family::ThreeLeaf(p) if p.contains(&0) => return bad("parameters must be at least 1"),
            Family::Tk(k) if *k < 2 => return bad("k must be at least 2"),
            Family::Comb(0) | Family::Zipper(0) => return bad("n must be at least 1"),
            Family::ExtendedComb { n, k } if *n == 0 || *k == 0 => {
                return bad("n and k must be at least 1")
            }
            _ => {}
        }
        match self.node_count() {
            Some(c) if c <= MAX_FAMILY_NODES => Ok(()),
            _ => bad(&format!("more than {MAX_FAMILY_NODES} nodes")),
        }
    }

    /// Number of nodes, or `None` on overflow.
    pub fn node_count(&self) -> Option<u128> {
        let sum = |v: &[u64]| v.iter().try_fold(0u128, |acc, &x| acc.checked_add(x as u128));
        let legs = |a: &[u64]| sum(a).map(|s| s - a.len() as u128);
        match self {
            Family::Star(a) if a.len() == 1 => Some(a[0] as u128),
            Family::Star(a) => legs(a)?.checked_add(1),
            Family::ExtendedStar { b, alphas } => legs(alphas)?.checked_add(*b as u128),
            Family::ThreeLeaf(p) => sum(p),
            Family::Tk(k) => (*k as u128).checked_mul(5)?.checked_sub(3),
            Family::Comb(n) => (*n as u128).checked_mul(2)?.checked_add(1),
            Family::ExtendedComb { n, k } => {
                let n = *n as u128;
                (*k as u128).checked_mul(n - 1)?.checked_add(n + 2)
            }
            Family::Zipper(n) => (*n as u128).checked_mul(4)?.checked_add(3),
            Family::CompleteBinary(d) => 2u128.checked_pow(*d as u32 + 1).map(|p| p - 1),
        }
    }

    pub fn shape(&self) -> Result<Shape> {
        self.validate()?;
        let us = |x: u64| x as usize;
        let legs = |a: &[u64]| a.iter().map(|&x| Shape::chain(us(x) - 1)).collect::<Vec<_>>();
        Ok(match self {
            Family::Star(a) if a.len() == 1 => Shape::chain(us(a[0])),
            Family::Star(a) => Shape::node(legs(a)),
            Family::ExtendedStar { b, alphas } if alphas.len() == 1 => Shape::chain(us(b + alphas[0] - 1)),
            Family::ExtendedStar { b, alphas } => Shape::chain_with_top(us(*b), legs(alphas)),
            Family::ThreeLeaf([a, b, c, d, e]) => Shape::chain_with_top(
                us(*a),
                vec![
                    Shape::chain_with_top(us(*b), vec![Shape::chain(us(*c)), Shape::chain(us(*d))]),
                    Shape::chain(us(*e)),
                ],
            ),
            Family::Tk(k) => Family::ThreeLeaf([*k, *k, k - 1, k - 1, k - 1]).shape()?,
            Family::Comb(n) => comb_shape(us(*n), 1),
            Family::ExtendedComb { n, k } => comb_shape(us(*n), us(*k)),
            Family::Zipper(n) => graft_shapes(comb_shape(us(*n), 1), comb_shape(us(*n), 1), 1),
            Family::CompleteBinary(d) => {
                let mut s = Shape::leaf();
                for _ in 0..*d {
                    s = Shape::node(vec![s.clone(), s]);
                }
                s
            }
        })
    }

    /// Antichains `{x, y}` and `{z}` from the complete binary tree picture:
    /// `x`, `y` the second and fourth leaves, `z` the right child of the root.
    pub fn named_witnesses(&self, tree: &RootedTree) -> Option<[NodeSet; 2]> {
        match self {
            Family::CompleteBinary(d) if *d >= 2 => {
                let z = *tree.children(tree.root()).get(1)?;
                Some([[tree.leaf(2), tree.leaf(4)].into_iter().collect(), NodeSet::singleton(z)])
            }
            _ => None,
        }
    }
}

/// `C_{n,k}`: backbone branches `[m]`, `2 <= m <= n`, of `k` nodes under a
/// single root node, with one extra leaf per backbone step.
fn comb_shape(n: usize, k: usize) -> Shape {
    let mut s = Shape::leaf();
    for _ in 1..n {
        s = Shape::chain_with_top(k, vec![s, Shape::leaf()]);
    }
    Shape::node(vec![s, Shape::leaf()])
}

fn graft_shapes(left: Shape, right: Shape, b: usize) -> Shape {
    Shape::chain_with_top(b, vec![left, right])
}

pub fn make_family(family: &Family) -> Result<RootedTree> {
    Ok(RootedTree::from_shape(&family.shape()?))
}

/// A new root branch of `b >= 1` nodes carrying `left` and `right`; `left`
/// gets the smaller leaf labels.
pub fn graft(left: &RootedTree, right: &RootedTree, b: usize) -> RootedTree {
    RootedTree::from_shape(&graft_shapes(left.shape().clone(), right.shape().clone(), b.max(1)))
}

/// `ℐ(T)` as `(interval, β)` pairs.
pub fn interval_family(tree: &RootedTree) -> Vec<([usize; 2], usize)> {
    let mut v: Vec<_> = tree
        .intervals()
        .iter()
        .map(|b| ([b.interval.lo, b.interval.hi], b.beta))
        .collect();
    v.sort_unstable();
    v
}

/// A set of orbits sharing size, `δ` and the `χ`, `χ̂` sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitClass {
    pub label: String,
    pub orbit_size: i128,
    pub orbit_count: i128,
    pub delta: u8,
    pub chi_sum: i128,
    pub hatchi_sum: i128,
}

impl OrbitClass {
    fn key(&self) -> (i128, u8, i128, i128) {
        (self.orbit_size, self.delta, self.chi_sum, self.hatchi_sum)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitProfile {
    pub classes: Vec<OrbitClass>,
    /// `β` of the root branch.
    pub root_beta: i128,
    /// Named constants of the closed form (`l`, `b`, ...).
    pub parameters: BTreeMap<String, i128>,
}

impl OrbitProfile {
    /// Orbit counts keyed by `(size, δ, χ, χ̂)`.
    pub fn normalized(&self) -> BTreeMap<(i128, u8, i128, i128), i128> {
        let mut m = BTreeMap::new();
        for c in &self.classes {
            *m.entry(c.key()).or_insert(0) += c.orbit_count;
        }
        m.retain(|_, v| *v != 0);
        m
    }

    /// `Σ size · count`, which must equal `#𝒜(T)`.
    pub fn total_antichains(&self) -> i128 {
        self.classes.iter().map(|c| c.orbit_size * c.orbit_count).sum()
    }

    pub fn orbit_count(&self) -> i128 {
        self.classes.iter().map(|c| c.orbit_count).sum()
    }

    fn delta_class(&self) -> Result<&OrbitClass> {
        let mut it = self.classes.iter().filter(|c| c.delta == 1);
        match (it.next(), it.next()) {
            (Some(c), None) if c.orbit_count == 1 => Ok(c),
            _ => Err(Error::MalformedProfile(
                "expected exactly one orbit containing the minimum".into(),
            )),
        }
    }

    fn check(&self) -> Result<()> {
        if self.classes.iter().any(|c| c.orbit_size <= 0 || c.orbit_count < 0) {
            return Err(Error::MalformedProfile("orbit sizes must be positive".into()));
        }
        if self.root_beta < 1 {
            return Err(Error::MalformedProfile("root branch must be nonempty".into()));
        }
        self.delta_class().map(|_| ())
    }

    /// Merges classes with equal `(size, δ, χ, χ̂)`, joining their labels.
    fn merged(mut self) -> Self {
        let mut out: Vec<OrbitClass> = Vec::new();
        for c in self.classes.drain(..).filter(|c| c.orbit_count != 0) {
            match out.iter_mut().find(|o| o.key() == c.key()) {
                Some(o) => {
                    o.orbit_count += c.orbit_count;
                    o.label = format!("{},{}", o.label, c.label);
                }
                None => out.push(c),
            }
        }
        self.classes = out;
        self
    }
}

fn class(label: &str, size: i128, count: i128, delta: u8, chi: i128, hatchi: i128) -> OrbitClass {
    OrbitClass {
        label: label.to_string(),
        orbit_size: size,
        orbit_count: count,
        delta,
        chi_sum: chi,
        hatchi_sum: hatchi,
    }
}

fn binom2(x: i128) -> i128 {
    x * (x - 1) / 2
}

fn pow2(e: i128) -> i128 {
    1i128 << e
}

fn exact(r: Ratio<i128>) -> i128 {
    assert!(r.is_integer(), "closed form produced a non-integer {r}");
    r.to_integer()
}

/// Profile of a chain of `m` nodes: one orbit through every antichain.
pub fn chain_profile(m: u64) -> OrbitProfile {
    let m = m as i128;
    OrbitProfile {
        classes: vec![class("chain", m + 1, 1, 1, m, m * (m + 1) / 2)],
        root_beta: m,
        parameters: BTreeMap::from([("m".to_string(), m)]),
    }
}

fn extended_star_profile(b: u64, alphas: &[u64]) -> OrbitProfile {
    let b = b as i128;
    let a: Vec<i128> = alphas.iter().map(|&x| x as i128).collect();
    let l = a.iter().fold(1i128, |acc, x| acc.lcm(x));
    let orbits = a.iter().product::<i128>() / l;
    let chi: i128 = a.iter().map(|x| l / x * (x - 1)).sum();
    let hat: i128 = a.iter().map(|x| l / x * binom2(*x)).sum();
    let root_beta = if a.len() == 1 { b + a[0] - 1 } else { b };
    OrbitProfile {
        classes: vec![
            class("delta", l + b, 1, 1, b + chi, l * b + binom2(b) + hat),
            class("other", l, orbits - 1, 0, chi, l * b + hat),
        ],
        root_beta,
        parameters: BTreeMap::from([("l".to_string(), l), ("b".to_string(), b)]),
    }
    .merged()
}

fn three_leaf_profile(p: [u64; 5]) -> Result<OrbitProfile> {
    let [a, b, c, d, e] = p;
    let left = extended_star_profile(b, &[c + 1, d + 1]);
    combine_profiles(&left, &chain_profile(e), a)
}

/// Closed-form orbit profile. Complete binary trees have none.
pub fn predicted_profile(family: &Family) -> Result<OrbitProfile> {
    family.validate()?;
    let params = |kv: &[(&str, i128)]| kv.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    Ok(match family {
        Family::Star(a) => extended_star_profile(1, a),
        Family::ExtendedStar { b, alphas } => extended_star_profile(*b, alphas),
        Family::ThreeLeaf(p) => three_leaf_profile(*p)?,
        Family::Tk(k) => {
            let k = *k as i128;
            OrbitProfile {
                classes: vec![
                    class("S", k, k * (k - 1), 0, 3 * k - 3, (7 * k * k - 3 * k) / 2),
                    class("M", 2 * k, k - 1, 0, 5 * k - 4, (11 * k * k - 5 * k) / 2),
                    class("L", 3 * k, 1, 1, 6 * k - 4, 6 * k * k - 3 * k),
                ],
                root_beta: k,
                parameters: params(&[("k", k)]),
            }
        }
        Family::Comb(n) => {
            let n = *n as i128;
            OrbitProfile {
                classes: vec![
                    class("S", 2, pow2(n - 1), 0, n + 1, 3 * n + 1),
                    class(
                        "L",
                        pow2(n + 1) - 1,
                        1,
                        1,
                        (2 * n + 1) * pow2(n - 1),
                        pow2(n - 1) * (6 * n - 5) + 3,
                    ),
                ],
                root_beta: 1,
                parameters: params(&[("n", n)]),
            }
        }
        Family::ExtendedComb { n, k } => extended_comb_profile(*n as i128, *k as i128),
        Family::Zipper(n) => {
            let n = *n as i128;
            let hat_ml = 3 * pow2(n) * (2 * n - 1) + 5;
            OrbitProfile {
                classes: vec![
                    class("S", 2, pow2(2 * n - 1), 0, 2 * n + 2, 6 * n + 4),
                    class("M", pow2(n + 1) - 1, pow2(n + 1) - 2, 0, pow2(n) * (2 * n + 1), hat_ml),
                    class("L", pow2(n + 1), 1, 1, pow2(n) * (2 * n + 1) + 1, hat_ml),
                    class(
                        "G",
                        pow2(n + 2) - 2,
                        pow2(n),
                        0,
                        pow2(n) * (4 * n + 3) - n - 1,
                        // S'xL'' pairing: l + l·χ̂(S')/2 + l·χ̂(L')/(2^{n+1}-1)
                        pow2(n) * (12 * n + 1) - 3 * n + 3,
                    ),
                ],
                root_beta: 1,
                parameters: params(&[("n", n)]),
            }
        }
        Family::CompleteBinary(_) => return Err(Error::UnsupportedFamily(family.to_string())),
    })
}

fn extended_comb_profile(n: i128, k: i128) -> OrbitProfile {
    let q = |num: i128, den: i128| Ratio::new(num, den);
    let mut classes = Vec::new();
    if k % 2 == 1 {
        classes.push(class("S", 2, pow2(n - 1), 0, n + 1, (2 * k + 1) * n - 2 * k + 3));
        classes.push(class(
            "L",
            (k + 1) * pow2(n) - 2 * k + 1,
            1,
            1,
            ((k + 1) * n + 1) * pow2(n - 1) - k + 1,
            (2 * k + 1) * (k + 1) * n * pow2(n - 1) - (5 * k * k + 3 * k - 3) * pow2(n - 1) + 3 * k * k,
        ));
    } else {
        let c = binom2(k - 2);
        for i in 1..=n {
            let size = k * (i - 1) + 2;
            let chi = q(size * n, 2) - q(k * (i * i - 5 * i + 4), 4) + 1;
            let hat = q((2 * k + 1) * size * n, 2) - q(k * (2 * k + 1) * i * i, 4) + q(3 * k * i, 4) + c;
            classes.push(class(&format!("S{i}"), size, pow2(n - i), 0, exact(chi), exact(hat)));
        }
        let chi = q(k * n * n, 4) + q((3 * k + 4) * n, 4) - k + 2;
        let hat = q(k * (2 * k + 1) * n * n, 4) - q((4 * k * k - 9 * k - 4) * n, 4) + c;
        classes.push(class("L", k * (n - 1) + 3, 1, 1, exact(chi), exact(hat)));
    }
    OrbitProfile {
        classes,
        root_beta: 1,
        parameters: BTreeMap::from([("n".to_string(), n), ("k".to_string(), k)]),
    }
}

/// Profile of `graft(T', T'', b)` from the profiles of `T'` and `T''`.
/// Each class pair gives `gcd` orbits of size `lcm`; the pair of orbits
/// through the minima yields one orbit widened by the new root tile.
pub fn combine_profiles(left: &OrbitProfile, right: &OrbitProfile, b: u64) -> Result<OrbitProfile> {
    left.check()?;
    right.check()?;
    if b == 0 {
        return Err(Error::MalformedProfile("root branch must be nonempty".into()));
    }
    let b = b as i128;
    let mut classes = Vec::new();
    for p in &left.classes {
        for q in &right.classes {
            let (c1, c2) = (p.orbit_size, q.orbit_size);
            let (g, l) = (c1.gcd(&c2), c1.lcm(&c2));
            let chi = l * p.chi_sum / c1 + l * q.chi_sum / c2;
            let hat = l * b + l * p.hatchi_sum / c1 + l * q.hatchi_sum / c2;
            let label = format!("{}x{}", p.label, q.label);
            let pairs = p.orbit_count * q.orbit_count * g;
            if p.delta == 1 && q.delta == 1 {
                classes.push(class(&format!("{label}*"), l + b, 1, 1, b + chi, hat + binom2(b)));
                classes.push(class(&label, l, pairs - 1, 0, chi, hat));
            } else {
                classes.push(class(&label, l, pairs, 0, chi, hat));
            }
        }
    }
    Ok(OrbitProfile {
        classes,
        root_beta: b,
        parameters: BTreeMap::from([("b".to_string(), b)]),
    }
    .merged())
}

/// Profile after adding `delta_beta` nodes below the root (the root branch
/// grows). Only the orbit through the minimum changes size: its root tile
/// widens. Every other orbit gains `delta_beta` in every ideal.
pub fn extend_root_transfer(profile: &OrbitProfile, delta_beta: u64) -> Result<OrbitProfile> {
    profile.check()?;
    let d = delta_beta as i128;
    let beta = profile.root_beta;
    let mut out = profile.clone();
    for c in &mut out.classes {
        if c.delta == 1 {
            // columns meeting a smaller tile: all but the root tile and the
            // all-yellow column
            let cols = c.orbit_size - 1 - beta;
            let (nb, ob) = (beta + d, beta);
            c.hatchi_sum += (nb * (nb + 1) / 2 + nb * cols) - (ob * (ob + 1) / 2 + ob * cols);
            c.orbit_size += d;
            c.chi_sum += d;
        } else {
            c.hatchi_sum += d * c.orbit_size;
        }
    }
    out.root_beta = beta + d;
    if let Some(b) = out.parameters.get_mut("b") {
        *b += d;
    }
    Ok(out)
}

/// Brute-force profile, one class per distinct `(size, δ, χ, χ̂)`.
pub fn observed_profile(tree: &RootedTree, orbits: &[Orbit]) -> OrbitProfile {
    let mut classes: Vec<OrbitClass> = Vec::new();
    for o in orbits {
        let s = orbit_sums(tree, o);
        let c = class("observed", o.len() as i128, 1, o.delta(), s.chi as i128, s.hatchi as i128);
        match classes.iter_mut().find(|x| x.key() == c.key()) {
            Some(x) => x.orbit_count += 1,
            None => classes.push(c),
        }
    }
    classes.sort_by_key(|c| c.key());
    let root_beta = tree.branch_position(tree.root()).0.beta as i128;
    OrbitProfile {
        classes,
        root_beta,
        parameters: BTreeMap::new(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassCheck {
    pub label: String,
    pub orbit_size: i128,
    pub delta: u8,
    pub predicted_count: i128,
    pub observed_count: i128,
    pub predicted_chi: i128,
    pub observed_chi: Vec<i128>,
    pub predicted_hatchi: i128,
    pub observed_hatchi: Vec<i128>,
    pub count_ok: bool,
    pub chi_ok: bool,
    pub hatchi_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HomometryCheck {
    pub chi: HomometryVerdict,
    pub hatchi: HomometryVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyReport {
    pub family: String,
    pub tree: String,
    pub antichains: u128,
    pub orbits: usize,
    /// `closed form`, `combine` or `none`.
    pub prediction: String,
    pub classes: Vec<ClassCheck>,
    /// Observed `(size, δ, χ, χ̂)` groups no predicted class accounts for.
    pub unexpected: Vec<OrbitClass>,
    pub total_ok: bool,
    pub all_match: bool,
    /// Filled in when no prediction exists.
    pub homometry: Option<HomometryCheck>,
}

impl fmt::Display for FamilyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}: {} antichains, {} orbits", self.family, self.tree, self.antichains, self.orbits)?;
        for c in &self.classes {
            let mark = |ok| if ok { "ok" } else { "MISMATCH" };
            writeln!(
                f,
                "  {} size {} delta {}: count {} vs {} {}; chi {} vs {:?} {}; hatchi {} vs {:?} {}",
                c.label,
                c.orbit_size,
                c.delta,
                c.predicted_count,
                c.observed_count,
                mark(c.count_ok),
                c.predicted_chi,
                c.observed_chi,
                mark(c.chi_ok),
                c.predicted_hatchi,
                c.observed_hatchi,
                mark(c.hatchi_ok),
            )?;
        }
        for u in &self.unexpected {
            writeln!(
                f,
                "  unexpected: {} orbits of size {} delta {} chi {} hatchi {}",
                u.orbit_count, u.orbit_size, u.delta, u.chi_sum, u.hatchi_sum
            )?;
        }
        if let Some(h) = &self.homometry {
            writeln!(f, "  no closed form; chi homometric: {}, hatchi homometric: {}", h.chi.is_homometric, h.hatchi.is_homometric)?;
        }
        if self.prediction == "none" {
            write!(f, "no prediction to compare")
        } else if self.all_match {
            write!(f, "all classes match")
        } else {
            write!(f, "MISMATCH")
        }
    }
}

/// Compares `predicted` with a brute-force enumeration of `tree`.
pub fn compare_profiles(
    family: &str,
    tree: &RootedTree,
    orbits: &[Orbit],
    predicted: Option<(&str, &OrbitProfile)>,
) -> FamilyReport {
    let observed = observed_profile(tree, orbits);
    let antichains = tree.count_antichains();
    let mut report = FamilyReport {
        family: family.to_string(),
        tree: tree.notation(),
        antichains,
        orbits: orbits.len(),
        prediction: "none".into(),
        classes: Vec::new(),
        unexpected: Vec::new(),
        total_ok: true,
        all_match: true,
        homometry: None,
    };
    let Some((kind, predicted)) = predicted else {
        return report;
    };
    report.prediction = kind.to_string();
    let obs = observed.normalized();
    let pred = predicted.normalized();
    for c in predicted.classes.iter().filter(|c| c.orbit_count != 0) {
        let same: Vec<&OrbitClass> = observed
            .classes
            .iter()
            .filter(|o| o.orbit_size == c.orbit_size && o.delta == c.delta)
            .collect();
        let observed_count = obs.get(&c.key()).copied().unwrap_or(0);
        let mut chis: Vec<i128> = same.iter().map(|o| o.chi_sum).collect();
        let mut hats: Vec<i128> = same.iter().map(|o| o.hatchi_sum).collect();
        chis.dedup();
        hats.sort_unstable();
        hats.dedup();
        report.classes.push(ClassCheck {
            label: c.label.clone(),
            orbit_size: c.orbit_size,
            delta: c.delta,
            predicted_count: pred[&c.key()],
            observed_count,
            predicted_chi: c.chi_sum,
            observed_chi: chis.clone(),
            predicted_hatchi: c.hatchi_sum,
            observed_hatchi: hats.clone(),
            count_ok: observed_count == pred[&c.key()],
            chi_ok: chis.contains(&c.chi_sum),
            hatchi_ok: hats.contains(&c.hatchi_sum),
        });
    }
    report.unexpected = observed
        .classes
        .iter()
        .filter(|o| !pred.contains_key(&o.key()))
        .cloned()
        .collect();
    report.total_ok = predicted.total_antichains() as u128 == antichains;
    report.all_match = report.total_ok && obs == pred;
    report
}

/// Builds the family tree, enumerates its orbits and diffs them against
/// the prediction. Trees without a closed form get homometry verdicts for
/// `χ` and `χ̂` instead.
pub fn verify_family(family: &Family, budget: u128) -> Result<FamilyReport> {
    let tree = make_family(family)?;
    let orbits = all_orbits(&tree, budget)?;
    let name = family.to_string();
    let report = match family {
        Family::CompleteBinary(_) => {
            let mut r = compare_profiles(&name, &tree, &orbits, None);
            r.homometry = Some(HomometryCheck {
                chi: family_homometry(family, &tree, &Statistic::chi(), &orbits)?,
                hatchi: family_homometry(family, &tree, &Statistic::hatchi(), &orbits)?,
            });
            r
        }
        Family::ThreeLeaf(_) => {
            let p = predicted_profile(family)?;
            compare_profiles(&name, &tree, &orbits, Some(("combine", &p)))
        }
        _ => {
            let p = predicted_profile(family)?;
            compare_profiles(&name, &tree, &orbits, Some(("closed form", &p)))
        }
    };
    Ok(report)
}

/// Homometry verdict whose witness, when the family names one and it is a
/// genuine witness, is the named pair of orbits.
pub fn family_homometry(
    family: &Family,
    tree: &RootedTree,
    stat: &Statistic,
    orbits: &[Orbit],
) -> Result<HomometryVerdict> {
    let mut v = homometry_of(tree, stat, orbits)?;
    if let Some([a, b]) = family.named_witnesses(tree) {
        if let Some(w) = witness_through(tree, stat, orbits, &a, &b)? {
            v.witness = Some(w);
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rowmotion::DEFAULT_BUDGET;

    fn fam(s: &str) -> Family {
        s.parse().unwrap()
    }

    #[test]
    fn descriptors_round_trip() {
        for s in ["star:3,3,2", "estar:b=2;3,3,2", "tk:3", "comb:4", "ecomb:n=3,k=2", "zipper:2", "cbt:3", "three:1,2,3,4,5"] {
            assert_eq!(fam(s).to_string(), s);
        }
        for bad in ["star:", "star:1,3", "estar:b=0;2", "tk:1", "comb:0", "ecomb:n=2", "nope:3", "cbt", "star:99999"] {
            assert!(bad.parse::<Family>().is_err(), "{bad}");
        }
    }

    #[test]
    fn interval_families_match_definitions() {
        let t = make_family(&fam("star:3,3,2")).unwrap();
        assert_eq!(
            interval_family(&t),
            vec![([1, 1], 2), ([1, 3], 1), ([2, 2], 2), ([3, 3], 1)]
        );
        let t = make_family(&fam("estar:b=2;3,3,2")).unwrap();
        assert!(interval_family(&t).contains(&([1, 3], 2)));
        let t = make_family(&fam("comb:3")).unwrap();
        assert_eq!(
            interval_family(&t),
            vec![([1, 1], 1), ([1, 2], 1), ([1, 3], 1), ([1, 4], 1), ([2, 2], 1), ([3, 3], 1), ([4, 4], 1)]
        );
        let t = make_family(&fam("ecomb:n=3,k=2")).unwrap();
        assert_eq!(
            interval_family(&t),
            vec![([1, 1], 1), ([1, 2], 2), ([1, 3], 2), ([1, 4], 1), ([2, 2], 1), ([3, 3], 1), ([4, 4], 1)]
        );
        let t = make_family(&fam("tk:3")).unwrap();
        assert_eq!(
            interval_family(&t),
            vec![([1, 1], 2), ([1, 2], 3), ([1, 3], 3), ([2, 2], 2), ([3, 3], 2)]
        );
        assert_eq!(make_family(&fam("cbt:3")).unwrap().len(), 15);
    }

    #[test]
    fn graft_examples() {
        let point = RootedTree::parse("()").unwrap();
        let s22 = make_family(&fam("star:2,2")).unwrap();
        assert_eq!(interval_family(&graft(&point, &point, 1)), interval_family(&s22));
        let c2 = make_family(&fam("comb:2")).unwrap();
        let z2 = make_family(&fam("zipper:2")).unwrap();
        assert_eq!(interval_family(&graft(&c2, &c2, 1)), interval_family(&z2));
        for k in 2..=4u64 {
            let left = make_family(&Family::ExtendedStar { b: k, alphas: vec![k, k] }).unwrap();
            let right = RootedTree::from_shape(&Shape::chain(k as usize - 1));
            let tk = make_family(&Family::Tk(k)).unwrap();
            assert_eq!(interval_family(&graft(&left, &right, k as usize)), interval_family(&tk));
        }
    }

    #[test]
    fn spot_profiles() {
        let p = predicted_profile(&fam("star:3,3,2")).unwrap();
        assert_eq!(
            p.normalized(),
            BTreeMap::from([((6, 0, 11, 21), 2), ((7, 1, 12, 21), 1)])
        );
        let p = predicted_profile(&fam("tk:2")).unwrap();
        assert_eq!(
            p.normalized(),
            BTreeMap::from([((2, 0, 3, 11), 2), ((4, 0, 6, 17), 1), ((6, 1, 8, 18), 1)])
        );
        let z1 = predicted_profile(&fam("zipper:1")).unwrap();
        assert_eq!(z1.total_antichains(), 26);
        assert!(matches!(predicted_profile(&fam("cbt:3")), Err(Error::UnsupportedFamily(_))));
    }

    #[test]
    fn small_families_verify() {
        for s in ["star:3,3,2", "star:2", "estar:b=3;2,3", "tk:2", "tk:3", "comb:3", "ecomb:n=3,k=2", "ecomb:n=2,k=3", "zipper:1", "three:2,1,3,1,2"] {
            let r = verify_family(&fam(s), DEFAULT_BUDGET).unwrap();
            assert!(r.all_match, "{r}");
        }
    }

    #[test]
    fn combine_and_extend() {
        let point = chain_profile(1);
        let s22 = combine_profiles(&point, &point, 1).unwrap();
        assert_eq!(s22.normalized(), predicted_profile(&fam("star:2,2")).unwrap().normalized());
        for n in 1..=4u64 {
            let cn = predicted_profile(&Family::Comb(n)).unwrap();
            let next = combine_profiles(&cn, &point, 1).unwrap();
            assert_eq!(next.normalized(), predicted_profile(&Family::Comb(n + 1)).unwrap().normalized());
        }
        let s = predicted_profile(&fam("star:3,3,2")).unwrap();
        assert_eq!(extend_root_transfer(&s, 0).unwrap(), s);
        let s2 = extend_root_transfer(&s, 1).unwrap();
        assert_eq!(s2.normalized(), predicted_profile(&fam("estar:b=2;3,3,2")).unwrap().normalized());
    }

    #[test]
    fn complete_binary_witness() {
        let f = fam("cbt:3");
        let r = verify_family(&f, DEFAULT_BUDGET).unwrap();
        let h = r.homometry.unwrap();
        assert!(!h.chi.is_homometric && !h.hatchi.is_homometric);
        let w = h.chi.witness.unwrap();
        assert_eq!((w[0].sum, w[1].sum), (15, 14));
        assert_eq!((w[0].orbit.size, w[1].orbit.size), (4, 4));
        let w = h.hatchi.witness.unwrap();
        assert_eq!((w[0].sum, w[1].sum), (35, 26));
    }
}
