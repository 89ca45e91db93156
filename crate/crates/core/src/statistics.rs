//! The `χ` family of statistics, orbit sums, and homomesy / homometry
//! verdicts.
//!
//! Plain statistics (`χ`, `χ_x`) read antichains. Hatted ones (`χ̂`, `χ̂_x`)
//! read order ideals; on an antichain orbit they are evaluated on `A↓`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::nodeset::{NodeId, NodeSet};
use crate::rowmotion::{all_orbits, Orbit, OrbitDump};
use crate::tiling::{tile_counts, validate_tiling, Tiling};
use crate::tree::{Interval, RootedTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Chi,
    ChiAt(NodeId),
    HatChi,
    HatChiAt(NodeId),
}

impl Term {
    pub fn is_hatted(self) -> bool {
        matches!(self, Term::HatChi | Term::HatChiAt(_))
    }

    fn node(self) -> Option<NodeId> {
        match self {
            Term::ChiAt(x) | Term::HatChiAt(x) => Some(x),
            _ => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Chi => f.write_str("chi"),
            Term::ChiAt(x) => write!(f, "chi_x:{x}"),
            Term::HatChi => f.write_str("hatchi"),
            Term::HatChiAt(x) => write!(f, "hatchi_x:{x}"),
        }
    }
}

/// What a statistic can be evaluated on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Antichain,
    Ideal,
    /// Mixes plain and hatted terms; only orbit sums make sense.
    Mixed,
}

/// An integer linear combination of [`Term`]s. Terms are kept sorted with
/// zero coefficients dropped, so equal statistics compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Statistic {
    terms: Vec<(i64, Term)>,
}

impl Statistic {
    pub fn term(t: Term) -> Self {
        Self { terms: vec![(1, t)] }
    }

    pub fn chi() -> Self {
        Self::term(Term::Chi)
    }

    pub fn hatchi() -> Self {
        Self::term(Term::HatChi)
    }

    pub fn chi_at(x: NodeId) -> Self {
        Self::term(Term::ChiAt(x))
    }

    pub fn hatchi_at(x: NodeId) -> Self {
        Self::term(Term::HatChiAt(x))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Term)>) -> Self {
        let mut acc: BTreeMap<Term, i64> = BTreeMap::new();
        for (c, t) in terms {
            *acc.entry(t).or_default() += c;
        }
        Self {
            terms: acc.into_iter().filter(|(_, c)| *c != 0).map(|(t, c)| (c, t)).collect(),
        }
    }

    pub fn terms(&self) -> &[(i64, Term)] {
        &self.terms
    }

    pub fn domain(&self) -> Domain {
        let hatted = self.terms.iter().filter(|(_, t)| t.is_hatted()).count();
        if hatted == 0 {
            Domain::Antichain
        } else if hatted == self.terms.len() {
            Domain::Ideal
        } else {
            Domain::Mixed
        }
    }

    fn check_nodes(&self, tree: &RootedTree) -> Result<()> {
        match self.terms.iter().filter_map(|(_, t)| t.node()).find(|&x| x >= tree.len()) {
            Some(x) => Err(Error::UnknownNode(x)),
            None => Ok(()),
        }
    }

    // Caller guarantees the node ids are valid.
    fn eval_unchecked(&self, antichain: &NodeSet, ideal: &NodeSet) -> i64 {
        self.terms
            .iter()
            .map(|&(c, t)| {
                c * match t {
                    Term::Chi => antichain.len() as i64,
                    Term::ChiAt(x) => antichain.contains(x) as i64,
                    Term::HatChi => ideal.len() as i64,
                    Term::HatChiAt(x) => ideal.contains(x) as i64,
                }
            })
            .sum()
    }
}

impl Add for Statistic {
    type Output = Statistic;
    fn add(self, rhs: Statistic) -> Statistic {
        Statistic::from_terms(self.terms.into_iter().chain(rhs.terms))
    }
}

impl Neg for Statistic {
    type Output = Statistic;
    fn neg(self) -> Statistic {
        Statistic::from_terms(self.terms.into_iter().map(|(c, t)| (-c, t)))
    }
}

impl Sub for Statistic {
    type Output = Statistic;
    fn sub(self, rhs: Statistic) -> Statistic {
        self + (-rhs)
    }
}

impl Mul<Statistic> for i64 {
    type Output = Statistic;
    fn mul(self, rhs: Statistic) -> Statistic {
        Statistic::from_terms(rhs.terms.into_iter().map(|(c, t)| (self * c, t)))
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, t)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            write!(f, "{sign}{}*{t}", c.abs())?;
        }
        Ok(())
    }
}

/// Parses `chi`, `hatchi`, `chi_x:N`, `hatchi_x:N` and integer combinations
/// such as `3*chi_x:4+chi_x:0` or `2*hatchi_x:3-3*hatchi_x:0`. A node may be
/// written as `root` for node 0.
impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::InvalidStatistic("empty statistic".into()));
        }
        let bad = |m: String| Error::InvalidStatistic(m);
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = 1i64;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if !first {
                return Err(bad(format!("expected '+' or '-' before '{rest}'")));
            }
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (piece, tail) = rest.split_at(end);
            rest = tail;
            let (coef, body) = match piece.split_once('*') {
                Some((c, b)) => (
                    c.parse::<i64>().map_err(|_| bad(format!("bad coefficient '{c}'")))?,
                    b,
                ),
                None => (1, piece),
            };
            let node = |arg: &str| -> Result<NodeId> {
                if arg == "root" {
                    Ok(0)
                } else {
                    arg.parse().map_err(|_| bad(format!("bad node '{arg}'")))
                }
            };
            let term = match body.split_once(':') {
                None if body == "chi" => Term::Chi,
                None if body == "hatchi" => Term::HatChi,
                Some(("chi_x", arg)) => Term::ChiAt(node(arg)?),
                Some(("hatchi_x", arg)) => Term::HatChiAt(node(arg)?),
                _ => return Err(bad(format!("unknown term '{body}'"))),
            };
            terms.push((sign * coef, term));
        }
        Ok(Statistic::from_terms(terms))
    }
}

/// A set handed to [`eval_statistic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subset {
    Antichain(NodeSet),
    Ideal(NodeSet),
}

pub fn eval_statistic(tree: &RootedTree, stat: &Statistic, s: &Subset) -> Result<i64> {
    stat.check_nodes(tree)?;
    let poset = tree.poset();
    match (stat.domain(), s) {
        (Domain::Antichain, Subset::Antichain(a)) => {
            poset.check_antichain(a)?;
            Ok(stat.eval_unchecked(a, &NodeSet::new()))
        }
        (Domain::Ideal, Subset::Ideal(l)) => {
            poset.check_ideal(l)?;
            Ok(stat.eval_unchecked(&NodeSet::new(), l))
        }
        (d, Subset::Antichain(_)) => Err(Error::DomainMismatch(format!(
            "statistic {stat} has {d:?} domain but was given an antichain"
        ))),
        (d, Subset::Ideal(_)) => Err(Error::DomainMismatch(format!(
            "statistic {stat} has {d:?} domain but was given an ideal"
        ))),
    }
}

/// Sum of `stat` over an antichain orbit; hatted terms see `A↓`.
pub fn orbit_sum(tree: &RootedTree, stat: &Statistic, orbit: &Orbit) -> Result<i64> {
    stat.check_nodes(tree)?;
    let needs_ideals = stat.domain() != Domain::Antichain;
    let empty = NodeSet::new();
    Ok(orbit
        .antichains()
        .iter()
        .map(|a| {
            let l = if needs_ideals {
                tree.down_set(a).expect("orbit members are in range")
            } else {
                empty.clone()
            };
            stat.eval_unchecked(a, &l)
        })
        .sum())
}

/// Every basic orbit sum at once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSums {
    /// Indexed by node id.
    pub chi_x: Vec<u64>,
    pub chi: u64,
    /// Indexed by node id.
    pub hatchi_x: Vec<u64>,
    pub hatchi: u64,
}

/// Direct evaluation over the orbit members.
pub fn orbit_sums(tree: &RootedTree, orbit: &Orbit) -> OrbitSums {
    let n = tree.len();
    let mut sums = OrbitSums {
        chi_x: vec![0; n],
        chi: 0,
        hatchi_x: vec![0; n],
        hatchi: 0,
    };
    for (a, l) in orbit.antichains().iter().zip(orbit.ideals(tree)) {
        for x in a.iter() {
            sums.chi_x[x] += 1;
        }
        for x in l.iter() {
            sums.hatchi_x[x] += 1;
        }
        sums.chi += a.len() as u64;
        sums.hatchi += l.len() as u64;
    }
    sums
}

/// Orbit sums read off a tiling through the tile counts `m_I`, `c_I`.
pub fn orbit_sums_from_tiling(tree: &RootedTree, tiling: &Tiling) -> Result<OrbitSums> {
    if let Some(v) = validate_tiling(tree, tiling).violation {
        return Err(Error::InvalidTiling(v.to_string()));
    }
    let counts = tile_counts(tree, tiling);
    let n = tree.len();
    let mut sums = OrbitSums {
        chi_x: vec![0; n],
        chi: 0,
        hatchi_x: vec![0; n],
        hatchi: 0,
    };
    for spec in tree.intervals() {
        let tc = counts[&spec.interval];
        let beta = spec.beta as u64;
        for (i, &x) in spec.nodes.iter().enumerate() {
            let j = i as u64 + 1;
            sums.chi_x[x] = tc.m;
            sums.hatchi_x[x] = j * tc.m + tc.c;
        }
        sums.chi += beta * tc.m;
        sums.hatchi += beta * (beta + 1) / 2 * tc.m + beta * tc.c;
    }
    Ok(sums)
}

/// `χ_x` per branch, as tile counts.
pub fn branch_chi(tree: &RootedTree, sums: &OrbitSums) -> BTreeMap<Interval, u64> {
    tree.intervals()
        .iter()
        .map(|b| (b.interval, sums.chi_x[b.nodes[0]]))
        .collect()
}

fn ser_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_opt_ratio<S: Serializer>(r: &Option<Ratio<i64>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => ser_ratio(r, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AverageWitness {
    pub orbit: OrbitDump,
    pub sum: i64,
    #[serde(serialize_with = "ser_ratio")]
    pub average: Ratio<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HomomesyVerdict {
    pub statistic: String,
    pub is_homomesic: bool,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub constant: Option<Ratio<i64>>,
    pub witness: Option<[AverageWitness; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumWitness {
    pub orbit: OrbitDump,
    pub sum: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HomometryVerdict {
    pub statistic: String,
    pub is_homometric: bool,
    /// Orbit size to orbit sum; present only when homometric.
    pub class_table: Option<BTreeMap<usize, i64>>,
    pub witness: Option<[SumWitness; 2]>,
}

fn sums_of(tree: &RootedTree, stat: &Statistic, orbits: &[Orbit]) -> Result<Vec<i64>> {
    orbits.iter().map(|o| orbit_sum(tree, stat, o)).collect()
}

pub fn check_homomesy(tree: &RootedTree, stat: &Statistic, budget: u128) -> Result<HomomesyVerdict> {
    let orbits = all_orbits(tree, budget)?;
    homomesy_of(tree, stat, &orbits)
}

/// [`check_homomesy`] on an already enumerated orbit list.
pub fn homomesy_of(tree: &RootedTree, stat: &Statistic, orbits: &[Orbit]) -> Result<HomomesyVerdict> {
    let sums = sums_of(tree, stat, orbits)?;
    let avg: Vec<Ratio<i64>> = sums
        .iter()
        .zip(orbits)
        .map(|(&s, o)| Ratio::new(s, o.len() as i64))
        .collect();
    let witness = avg.iter().position(|a| *a != avg[0]).map(|k| {
        let w = |i: usize| AverageWitness {
            orbit: orbits[i].dump(i),
            sum: sums[i],
            average: avg[i],
        };
        [w(0), w(k)]
    });
    Ok(HomomesyVerdict {
        statistic: stat.to_string(),
        is_homomesic: witness.is_none(),
        constant: witness.is_none().then(|| avg[0]),
        witness,
    })
}

pub fn check_homometry(tree: &RootedTree, stat: &Statistic, budget: u128) -> Result<HomometryVerdict> {
    let orbits = all_orbits(tree, budget)?;
    homometry_of(tree, stat, &orbits)
}

/// [`check_homometry`] on an already enumerated orbit list. The witness
/// comes from the smallest orbit size whose sums disagree: the first orbit
/// with the largest sum against the first with the smallest.
pub fn homometry_of(tree: &RootedTree, stat: &Statistic, orbits: &[Orbit]) -> Result<HomometryVerdict> {
    let sums = sums_of(tree, stat, orbits)?;
    let mut by_size: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, o) in orbits.iter().enumerate() {
        by_size.entry(o.len()).or_default().push(i);
    }
    let w = |j: usize| SumWitness {
        orbit: orbits[j].dump(j),
        sum: sums[j],
    };
    let witness = by_size.values().find_map(|idx| {
        let hi = *idx.iter().min_by_key(|&&i| (std::cmp::Reverse(sums[i]), i))?;
        let lo = *idx.iter().min_by_key(|&&i| (sums[i], i))?;
        (sums[hi] != sums[lo]).then(|| [w(hi), w(lo)])
    });
    let class_table = witness
        .is_none()
        .then(|| by_size.iter().map(|(&size, idx)| (size, sums[idx[0]])).collect());
    Ok(HomometryVerdict {
        statistic: stat.to_string(),
        is_homometric: witness.is_none(),
        class_table,
        witness,
    })
}

/// The orbits through `a` and `b` as a homometry witness, if they have the
/// same size and different sums.
pub fn witness_through(
    tree: &RootedTree,
    stat: &Statistic,
    orbits: &[Orbit],
    a: &NodeSet,
    b: &NodeSet,
) -> Result<Option<[SumWitness; 2]>> {
    let find = |s: &NodeSet| orbits.iter().position(|o| o.contains(s));
    let (Some(i), Some(j)) = (find(a), find(b)) else {
        return Ok(None);
    };
    let (si, sj) = (orbit_sum(tree, stat, &orbits[i])?, orbit_sum(tree, stat, &orbits[j])?);
    if orbits[i].len() != orbits[j].len() || si == sj {
        return Ok(None);
    }
    Ok(Some([
        SumWitness {
            orbit: orbits[i].dump(i),
            sum: si,
        },
        SumWitness {
            orbit: orbits[j].dump(j),
            sum: sj,
        },
    ]))
}

/// One line of a statistics table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatsRow {
    pub orbit: usize,
    pub size: usize,
    pub delta: u8,
    pub chi: u64,
    pub hatchi: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_x: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hatchi_x: Option<Vec<u64>>,
}

pub fn stats_table(tree: &RootedTree, orbits: &[Orbit], per_node: bool) -> Vec<StatsRow> {
    orbits
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let s = orbit_sums(tree, o);
            StatsRow {
                orbit: i,
                size: o.len(),
                delta: o.delta(),
                chi: s.chi,
                hatchi: s.hatchi,
                chi_x: per_node.then(|| s.chi_x.clone()),
                hatchi_x: per_node.then_some(s.hatchi_x),
            }
        })
        .collect()
}

pub fn stats_csv(rows: &[StatsRow], nodes: usize) -> String {
    let mut out = String::from("orbit,size,delta,chi,hatchi");
    let per_node = rows.first().is_some_and(|r| r.chi_x.is_some());
    if per_node {
        for x in 0..nodes {
            out += &format!(",chi_x:{x}");
        }
        for x in 0..nodes {
            out += &format!(",hatchi_x:{x}");
        }
    }
    out.push('\n');
    for r in rows {
        out += &format!("{},{},{},{},{}", r.orbit, r.size, r.delta, r.chi, r.hatchi);
        for v in r.chi_x.iter().flatten().chain(r.hatchi_x.iter().flatten()) {
            out += &format!(",{v}");
        }
        out.push('\n');
    }
    out
}
