//! Piecewise-linear and birational rowmotion.
//!
//! Labelings live on `P̂`, the poset with an added bottom and top. PL points
//! are order-preserving with `f(0̂) = 0`, `f(1̂) = 1`, so an order ideal `L`
//! corresponds to the 0/1 point that vanishes exactly on `L`. Birational
//! points carry `f(0̂) = f(1̂) = 1`.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::nodeset::{NodeId, NodeSet};
use crate::poset::Poset;

/// `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;
pub const DEFAULT_MAX_ITER: u64 = 100_000;
pub const MAX_RESTARTS: u32 = 10;

/// A labeling of `P̂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledPoint<T> {
    pub bottom: T,
    pub top: T,
    /// Indexed by node id.
    pub values: Vec<T>,
}

impl<T> LabeledPoint<T> {
    fn lower_bounds<'a>(&'a self, poset: &'a Poset, x: NodeId) -> Box<dyn Iterator<Item = &'a T> + 'a> {
        let covers = poset.lower_covers(x);
        if covers.is_empty() {
            Box::new(std::iter::once(&self.bottom))
        } else {
            Box::new(covers.iter().map(|&y| &self.values[y]))
        }
    }

    fn upper_bounds<'a>(&'a self, poset: &'a Poset, x: NodeId) -> Box<dyn Iterator<Item = &'a T> + 'a> {
        let covers = poset.upper_covers(x);
        if covers.is_empty() {
            Box::new(std::iter::once(&self.top))
        } else {
            Box::new(covers.iter().map(|&z| &self.values[z]))
        }
    }

    fn check_len(&self, poset: &Poset) -> Result<()> {
        if self.values.len() == poset.len() {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!(
                "labeling has {} values for a poset of {} elements",
                self.values.len(),
                poset.len()
            )))
        }
    }
}

impl LabeledPoint<BigRational> {
    pub fn pl(values: Vec<BigRational>) -> Self {
        Self {
            bottom: BigRational::zero(),
            top: BigRational::one(),
            values,
        }
    }

    /// The vertex of the order polytope for the ideal `l`: 0 on `l`, 1 off it.
    pub fn from_ideal(poset: &Poset, l: &NodeSet) -> Result<Self> {
        poset.check_ideal(l)?;
        Ok(Self::pl(
            poset
                .elements()
                .map(|x| if l.contains(x) { BigRational::zero() } else { BigRational::one() })
                .collect(),
        ))
    }

    /// Inverse of [`Self::from_ideal`] on 0/1 points.
    pub fn to_ideal(&self) -> Option<NodeSet> {
        let mut l = NodeSet::new();
        for (x, v) in self.values.iter().enumerate() {
            if Zero::is_zero(v) {
                l.insert(x);
            } else if !v.is_one() {
                return None;
            }
        }
        Some(l)
    }
}

impl<F: Field> LabeledPoint<F> {
    pub fn birational(values: Vec<F>, one: F) -> Self {
        Self {
            bottom: one.clone(),
            top: one,
            values,
        }
    }
}

/// Membership in the order polytope: values in `[0,1]`, order-preserving.
pub fn check_order_polytope(poset: &Poset, f: &LabeledPoint<BigRational>) -> Result<()> {
    f.check_len(poset)?;
    if !Zero::is_zero(&f.bottom) || !f.top.is_one() {
        return Err(Error::NotInOrderPolytope("boundary values must be 0 and 1".into()));
    }
    for x in poset.elements() {
        let v = &f.values[x];
        if v.is_negative() || *v > BigRational::one() {
            return Err(Error::NotInOrderPolytope(format!("value {v} at {x} is outside [0,1]")));
        }
        for &z in poset.upper_covers(x) {
            if f.values[z] < *v {
                return Err(Error::NotInOrderPolytope(format!("{x} < {z} but f({x}) > f({z})")));
            }
        }
    }
    Ok(())
}

fn pl_toggle_unchecked(poset: &Poset, f: &mut LabeledPoint<BigRational>, x: NodeId) {
    let big_m = f.lower_bounds(poset, x).max().expect("P̂ has a lower cover").clone();
    let small_m = f.upper_bounds(poset, x).min().expect("P̂ has an upper cover").clone();
    f.values[x] = big_m + small_m - &f.values[x];
}

/// `σ_x`: `f(x) ↦ M + m - f(x)` with `M` the largest value just below `x`
/// and `m` the smallest just above.
pub fn pl_toggle(poset: &Poset, f: &LabeledPoint<BigRational>, x: NodeId) -> Result<LabeledPoint<BigRational>> {
    poset.check_node(x)?;
    check_order_polytope(poset, f)?;
    let mut g = f.clone();
    pl_toggle_unchecked(poset, &mut g, x);
    Ok(g)
}

fn extension(poset: &Poset, ext: Option<&[NodeId]>) -> Result<Vec<NodeId>> {
    match ext {
        None => Ok(poset.linear_extension()),
        Some(e) if poset.is_linear_extension(e) => Ok(e.to_vec()),
        Some(_) => Err(Error::NotLinearExtension),
    }
}

/// PL rowmotion: toggles from the top of a linear extension down.
pub fn pl_rowmotion(poset: &Poset, f: &LabeledPoint<BigRational>) -> Result<LabeledPoint<BigRational>> {
    pl_rowmotion_with(poset, f, None)
}

pub fn pl_rowmotion_with(
    poset: &Poset,
    f: &LabeledPoint<BigRational>,
    ext: Option<&[NodeId]>,
) -> Result<LabeledPoint<BigRational>> {
    check_order_polytope(poset, f)?;
    let ext = extension(poset, ext)?;
    let mut g = f.clone();
    for &x in ext.iter().rev() {
        pl_toggle_unchecked(poset, &mut g, x);
    }
    Ok(g)
}

/// The arithmetic birational toggles need.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Bits needed to store the value, for growth logging.
    fn bit_size(&self) -> u64;
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn bit_size(&self) -> u64 {
        self.numer().bits().max(self.denom().bits())
    }
}

/// An element of `ℤ/pℤ` for a prime `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModP {
    pub value: u64,
    pub p: u64,
}

impl ModP {
    pub fn new(value: u64, p: u64) -> Self {
        Self { value: value % p, p }
    }

    /// `a / b mod p`, or `None` when `p` divides `b`.
    pub fn from_ratio(r: &BigRational, p: u64) -> Option<Self> {
        let m = BigInt::from(p);
        let reduce = |x: &BigInt| {
            let v = ((x % &m) + &m) % &m;
            u64::try_from(v).expect("reduced below p")
        };
        let d = ModP::new(reduce(r.denom()), p).inv()?;
        Some(ModP::new(reduce(r.numer()), p).mul(&d))
    }
}

impl fmt::Display for ModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Field for ModP {
    fn zero_like(&self) -> Self {
        ModP { value: 0, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        ModP {
            value: ((self.value as u128 + other.value as u128) % self.p as u128) as u64,
            p: self.p,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        ModP {
            value: ((self.value as u128 * other.value as u128) % self.p as u128) as u64,
            p: self.p,
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // extended Euclid on (value, p)
        let (mut r0, mut r1) = (self.p as i128, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        (r0 == 1).then(|| ModP {
            value: t0.rem_euclid(self.p as i128) as u64,
            p: self.p,
        })
    }
    fn bit_size(&self) -> u64 {
        64 - self.p.leading_zeros() as u64
    }
}

fn birational_toggle_unchecked<F: Field>(poset: &Poset, f: &mut LabeledPoint<F>, x: NodeId) -> Result<()> {
    let zero = f.values[x].zero_like();
    let below = f.lower_bounds(poset, x).fold(zero.clone(), |acc, v| acc.add(v));
    let mut recip = zero;
    for v in f.upper_bounds(poset, x) {
        recip = recip.add(&v.inv().ok_or(Error::ZeroDenominator(x))?);
    }
    let denom = f.values[x].mul(&recip).inv().ok_or(Error::ZeroDenominator(x))?;
    f.values[x] = below.mul(&denom);
    Ok(())
}

/// `T_x`: `f(x) ↦ (Σ_{y⋖x} f(y)) / (f(x) · Σ_{z⋗x} 1/f(z))` over `P̂`.
pub fn birational_toggle<F: Field>(poset: &Poset, f: &LabeledPoint<F>, x: NodeId) -> Result<LabeledPoint<F>> {
    poset.check_node(x)?;
    f.check_len(poset)?;
    let mut g = f.clone();
    birational_toggle_unchecked(poset, &mut g, x)?;
    Ok(g)
}

pub fn birational_rowmotion<F: Field>(poset: &Poset, f: &LabeledPoint<F>) -> Result<LabeledPoint<F>> {
    birational_rowmotion_with(poset, f, None)
}

pub fn birational_rowmotion_with<F: Field>(
    poset: &Poset,
    f: &LabeledPoint<F>,
    ext: Option<&[NodeId]>,
) -> Result<LabeledPoint<F>> {
    f.check_len(poset)?;
    let ext = extension(poset, ext)?;
    let mut g = f.clone();
    for &x in ext.iter().rev() {
        birational_toggle_unchecked(poset, &mut g, x)?;
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Outcome {
    #[serde(rename_all = "camelCase")]
    FiniteOrder { order: u64 },
    #[serde(rename_all = "camelCase")]
    NoRepeatWithin { max_iter: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OrderSearchResult {
    pub outcome: Outcome,
    pub iterations_used: u64,
    pub mode: String,
    /// Fresh starts after a zero denominator (prime-field mode only).
    pub restarts: u32,
    /// Largest numerator/denominator bit length seen (exact mode only).
    pub peak_bits: Option<u64>,
}

/// Iterates PL rowmotion from `f0` until it returns, at most `max_iter` times.
pub fn order_search_pl(poset: &Poset, f0: &LabeledPoint<BigRational>, max_iter: u64) -> Result<OrderSearchResult> {
    check_order_polytope(poset, f0)?;
    let ext = poset.linear_extension();
    let mut f = f0.clone();
    for k in 1..=max_iter {
        for &x in ext.iter().rev() {
            pl_toggle_unchecked(poset, &mut f, x);
        }
        if f == *f0 {
            return Ok(found(k, "pl-rational", 0, None));
        }
    }
    Ok(not_found(max_iter, "pl-rational", 0, None))
}

fn found(k: u64, mode: &str, restarts: u32, peak_bits: Option<u64>) -> OrderSearchResult {
    OrderSearchResult {
        outcome: Outcome::FiniteOrder { order: k },
        iterations_used: k,
        mode: mode.into(),
        restarts,
        peak_bits,
    }
}

fn not_found(max_iter: u64, mode: &str, restarts: u32, peak_bits: Option<u64>) -> OrderSearchResult {
    OrderSearchResult {
        outcome: Outcome::NoRepeatWithin { max_iter },
        iterations_used: max_iter,
        mode: mode.into(),
        restarts,
        peak_bits,
    }
}

/// Birational order search over exact rationals. A zero denominator is an
/// error here.
pub fn order_search_rational(
    poset: &Poset,
    f0: &LabeledPoint<BigRational>,
    max_iter: u64,
) -> Result<OrderSearchResult> {
    f0.check_len(poset)?;
    let ext = poset.linear_extension();
    let mut f = f0.clone();
    let mut peak = f0.values.iter().map(Field::bit_size).max().unwrap_or(0);
    for k in 1..=max_iter {
        for &x in ext.iter().rev() {
            birational_toggle_unchecked(poset, &mut f, x)?;
        }
        let bits = f.values.iter().map(Field::bit_size).max().unwrap_or(0);
        if bits > peak {
            peak = bits;
            log::debug!("iteration {k}: peak bit length {peak}");
        }
        if f == *f0 {
            return Ok(found(k, "birational-rational", 0, Some(peak)));
        }
    }
    Ok(not_found(max_iter, "birational-rational", 0, Some(peak)))
}

/// Birational order search mod `p`. On a zero denominator the search
/// restarts from fresh random values, at most [`MAX_RESTARTS`] times.
pub fn order_search_modp<R: Rng + ?Sized>(
    poset: &Poset,
    f0: &LabeledPoint<ModP>,
    max_iter: u64,
    rng: &mut R,
) -> Result<OrderSearchResult> {
    f0.check_len(poset)?;
    let p = f0.bottom.p;
    let mode = format!("birational-modp:{p}");
    let ext = poset.linear_extension();
    let mut start = f0.clone();
    let mut restarts = 0;
    'restart: loop {
        let mut f = start.clone();
        for k in 1..=max_iter {
            for &x in ext.iter().rev() {
                if let Err(Error::ZeroDenominator(x)) = birational_toggle_unchecked(poset, &mut f, x) {
                    if restarts == MAX_RESTARTS {
                        return Err(Error::RetriesExhausted(MAX_RESTARTS));
                    }
                    restarts += 1;
                    log::debug!("zero denominator at {x} in iteration {k}; restart {restarts}");
                    start = random_modp_point(poset.len(), p, rng);
                    continue 'restart;
                }
            }
            if f == start {
                return Ok(found(k, &mode, restarts, None));
            }
        }
        return Ok(not_found(max_iter, &mode, restarts, None));
    }
}

fn random_ratio<R: Rng + ?Sized>(rng: &mut R) -> (u32, u32) {
    (rng.random_range(1..=100), rng.random_range(1..=100))
}

/// Positive rationals `a/b` with `a, b` uniform in `[1, 100]`.
pub fn random_rational_point<R: Rng + ?Sized>(len: usize, rng: &mut R) -> LabeledPoint<BigRational> {
    let values = (0..len)
        .map(|_| {
            let (a, b) = random_ratio(rng);
            BigRational::new(a.into(), b.into())
        })
        .collect();
    LabeledPoint::birational(values, BigRational::one())
}

/// A random rational point of the order polytope: values `min(a,b)/max(a,b)`
/// sorted along a linear extension.
pub fn random_pl_point<R: Rng + ?Sized>(poset: &Poset, rng: &mut R) -> LabeledPoint<BigRational> {
    let mut draws: Vec<BigRational> = (0..poset.len())
        .map(|_| {
            let (a, b) = random_ratio(rng);
            BigRational::new(a.min(b).into(), a.max(b).into())
        })
        .collect();
    draws.sort();
    let mut values = vec![BigRational::zero(); poset.len()];
    for (x, v) in poset.linear_extension().into_iter().zip(draws) {
        values[x] = v;
    }
    LabeledPoint::pl(values)
}

pub fn random_modp_point<R: Rng + ?Sized>(len: usize, p: u64, rng: &mut R) -> LabeledPoint<ModP> {
    let values = (0..len).map(|_| ModP::new(rng.random_range(1..p), p)).collect();
    LabeledPoint::birational(values, ModP::new(1, p))
}

/// Reduces an exact point mod `p`; `None` if a denominator vanishes.
pub fn reduce_point(f: &LabeledPoint<BigRational>, p: u64) -> Option<LabeledPoint<ModP>> {
    Some(LabeledPoint {
        bottom: ModP::from_ratio(&f.bottom, p)?,
        top: ModP::from_ratio(&f.top, p)?,
        values: f.values.iter().map(|v| ModP::from_ratio(v, p)).collect::<Option<_>>()?,
    })
}

/// One order-search run as a JSON record.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentRecord {
    pub poset: String,
    pub mode: String,
    pub seed: u64,
    pub max_iter: u64,
    pub outcome: Outcome,
    pub iterations_used: u64,
    pub restarts: u32,
    pub peak_bits: Option<u64>,
    /// Only filled when timing is requested, so records stay reproducible.
    pub wall_time_ms: Option<f64>,
}

/// Scalar field for [`run_experiment`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarMode {
    Rational,
    ModP(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dynamics {
    PiecewiseLinear,
    Birational,
}

/// Draws a seeded random start and runs the order search.
pub fn run_experiment<R: Rng + ?Sized>(
    poset: &Poset,
    descriptor: &str,
    dynamics: Dynamics,
    mode: ScalarMode,
    seed: u64,
    max_iter: u64,
    rng: &mut R,
    timed: bool,
) -> Result<ExperimentRecord> {
    let clock = Instant::now();
    let result = match (dynamics, mode) {
        (Dynamics::PiecewiseLinear, ScalarMode::Rational) => {
            order_search_pl(poset, &random_pl_point(poset, rng), max_iter)?
        }
        (Dynamics::PiecewiseLinear, ScalarMode::ModP(_)) => {
            return Err(Error::DomainMismatch("PL rowmotion needs an ordered field".into()))
        }
        (Dynamics::Birational, ScalarMode::Rational) => {
            order_search_rational(poset, &random_rational_point(poset.len(), rng), max_iter)?
        }
        (Dynamics::Birational, ScalarMode::ModP(p)) => {
            let f0 = random_modp_point(poset.len(), p, rng);
            order_search_modp(poset, &f0, max_iter, rng)?
        }
    };
    Ok(ExperimentRecord {
        poset: descriptor.to_string(),
        mode: result.mode,
        seed,
        max_iter,
        outcome: result.outcome,
        iterations_used: result.iterations_used,
        restarts: result.restarts,
        peak_bits: result.peak_bits,
        wall_time_ms: timed.then(|| clock.elapsed().as_secs_f64() * 1e3),
    })
}
