//! Countable subsets of the rationals: finite point lists plus one-sided
//! arithmetic progressions `{base + k·step : k ∈ ℕ}`.
//!
//! Every value is kept in a normal form. After scaling to a common
//! denominator the set is an eventually periodic set of integers; the normal
//! form uses its minimal eventual period `P`, one progression of step `P` per
//! residue class that is eventually full, each started as early as possible,
//! and a sorted list of the remaining points. Two countable parts with the
//! same elements therefore compare equal structurally.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::Rational;
use crate::sets::interval::{Cut, Interval, IntervalUnion, Side};

/// Largest common period (in lattice units) a normal form will tabulate.
pub const RESIDUE_LIMIT: usize = 1 << 20;
/// Largest number of isolated points a single operation may materialize.
pub const POINT_LIMIT: usize = 1 << 20;

/// `{base + k·step : k = 0, 1, 2, …}` with `step > 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Progression {
    base: Rational,
    step: Rational,
}

impl Progression {
    pub fn new(base: Rational, step: Rational) -> Option<Self> {
        step.is_positive().then_some(Progression { base, step })
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn step(&self) -> &Rational {
        &self.step
    }

    pub fn nth(&self, k: &BigInt) -> Rational {
        &self.base + &(&self.step * &Rational::from_bigint(k.clone()))
    }

    /// Index `k` with `nth(k) == x`, if any.
    pub fn index_of(&self, x: &Rational) -> Option<BigInt> {
        let k = (x - &self.base) / self.step.clone();
        (k.is_integer() && !k.is_negative()).then(|| k.numer().clone())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.index_of(x).is_some()
    }

    /// Index range `[kmin, kmax]` (`kmax = None` for unbounded) of the terms inside `iv`.
    fn index_range(&self, iv: &Interval) -> Option<(BigInt, Option<BigInt>)> {
        let rel = |v: &Rational| (v - &self.base) / self.step.clone();
        let kmin = match iv.lo() {
            Cut::NegInf => BigInt::zero(),
            Cut::At(a, Side::Below) => rel(a).ceil(),
            Cut::At(a, Side::Above) => rel(a).floor() + 1,
            Cut::PosInf => return None,
        };
        let kmin = kmin.max(BigInt::zero());
        let kmax = match iv.hi() {
            Cut::PosInf => None,
            Cut::At(c, Side::Above) => Some(rel(c).floor()),
            Cut::At(c, Side::Below) => Some(rel(c).ceil() - 1),
            Cut::NegInf => return None,
        };
        match kmax {
            Some(hi) if hi < kmin => None,
            other => Some((kmin, other)),
        }
    }
}

/// A countable set in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CountablePart {
    points: Vec<Rational>,
    progressions: Vec<Progression>,
}

impl CountablePart {
    pub fn empty() -> Self {
        CountablePart::default()
    }

    pub fn from_points(points: impl IntoIterator<Item = Rational>) -> Self {
        let mut points: Vec<Rational> = points.into_iter().collect();
        points.sort();
        points.dedup();
        CountablePart {
            points,
            progressions: Vec::new(),
        }
    }

    pub fn from_progression(p: Progression) -> Self {
        CountablePart {
            points: Vec::new(),
            progressions: vec![p],
        }
    }

    /// Normalizes an arbitrary union of points and progressions.
    pub fn from_parts(points: Vec<Rational>, progressions: Vec<Progression>) -> Result<Self> {
        canonicalize(points, progressions)
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn progressions(&self) -> &[Progression] {
        &self.progressions
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.progressions.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.progressions.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.points.binary_search(x).is_ok() || self.progressions.iter().any(|p| p.contains(x))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        if other.is_empty() {
            return Ok(self.clone());
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        let mut progs = self.progressions.clone();
        progs.extend(other.progressions.iter().cloned());
        canonicalize(points, progs)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.is_empty() || other.is_empty() {
            return Ok(CountablePart::empty());
        }
        let mut points: Vec<Rational> = self
            .points
            .iter()
            .filter(|x| other.contains(x))
            .cloned()
            .collect();
        points.extend(other.points.iter().filter(|x| self.contains(x)).cloned());
        let mut progs = Vec::new();
        for p in &self.progressions {
            for q in &other.progressions {
                if let Some(r) = intersect_progressions(p, q) {
                    progs.push(r);
                }
            }
        }
        canonicalize(points, progs)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        if self.is_empty() || other.is_empty() {
            return Ok(self.clone());
        }
        let mut budget = Budget::new();
        let mut points: Vec<Rational> = self.points.clone();
        let mut pieces = self.progressions.clone();
        for q in &other.progressions {
            let mut next = Vec::with_capacity(pieces.len());
            for p in &pieces {
                subtract_progression(p, q, &mut points, &mut next, &mut budget)?;
            }
            pieces = next;
        }
        let mut kept = Vec::with_capacity(pieces.len());
        for p in pieces {
            let last_hit = other.points.iter().filter_map(|x| p.index_of(x)).max();
            match last_hit {
                None => kept.push(p),
                Some(kmax) => {
                    let mut k = BigInt::zero();
                    while k <= kmax {
                        budget.spend(1)?;
                        points.push(p.nth(&k));
                        k += 1;
                    }
                    kept.push(Progression::new(p.nth(&(kmax + 1)), p.step.clone()).unwrap());
                }
            }
        }
        points.retain(|x| !other.contains(x));
        canonicalize(points, kept)
    }

    pub fn intersect_intervals(&self, ivs: &IntervalUnion) -> Result<Self> {
        if self.is_empty() {
            return Ok(CountablePart::empty());
        }
        let mut budget = Budget::new();
        let mut points: Vec<Rational> = self
            .points
            .iter()
            .filter(|x| ivs.contains(x))
            .cloned()
            .collect();
        let mut progs = Vec::new();
        for p in &self.progressions {
            for iv in ivs.parts() {
                let Some((kmin, kmax)) = p.index_range(iv) else {
                    continue;
                };
                match kmax {
                    None => progs.push(Progression::new(p.nth(&kmin), p.step.clone()).unwrap()),
                    Some(kmax) => {
                        let mut k = kmin;
                        while k <= kmax {
                            budget.spend(1)?;
                            points.push(p.nth(&k));
                            k += 1;
                        }
                    }
                }
            }
        }
        canonicalize(points, progs)
    }

    pub fn minus_intervals(&self, ivs: &IntervalUnion) -> Result<Self> {
        self.intersect_intervals(&ivs.complement())
    }
}

struct Budget(usize);

impl Budget {
    fn new() -> Self {
        Budget(POINT_LIMIT)
    }

    fn spend(&mut self, n: usize) -> Result<()> {
        if n > self.0 {
            return Err(Error::RepresentationOverflow(format!(
                "countable set would list more than {POINT_LIMIT} isolated points"
            )));
        }
        self.0 -= n;
        Ok(())
    }
}

/// Common-denominator view of a collection of rationals.
struct Lattice {
    denom: BigInt,
}

impl Lattice {
    fn new<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Self {
        let mut denom = BigInt::one();
        for v in values {
            denom = denom.lcm(v.denom());
        }
        Lattice { denom }
    }

    fn scale(&self, r: &Rational) -> BigInt {
        r.numer() * (&self.denom / r.denom())
    }

    fn unscale(&self, n: BigInt) -> Rational {
        Rational::from_bigints(n, self.denom.clone())
    }
}

/// Inverse of `a` modulo `m` (`gcd(a, m) = 1`, `m >= 1`).
fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let eg = a.mod_floor(m).extended_gcd(m);
    debug_assert!(eg.gcd.is_one());
    eg.x.mod_floor(m)
}

/// Solves `x ≡ b1 (mod s1)`, `x ≡ b2 (mod s2)`; returns `(x0, lcm)`.
fn crt(b1: &BigInt, s1: &BigInt, b2: &BigInt, s2: &BigInt) -> Option<(BigInt, BigInt)> {
    let g = s1.gcd(s2);
    let diff = b2 - b1;
    if !diff.mod_floor(&g).is_zero() {
        return None;
    }
    let m = s2 / &g;
    let t = ((&diff / &g) * mod_inverse(&(s1 / &g), &m)).mod_floor(&m);
    let l = s1 * &m;
    Some(((b1 + s1 * t).mod_floor(&l), l))
}

fn intersect_progressions(p: &Progression, q: &Progression) -> Option<Progression> {
    let lat = Lattice::new([&p.base, &p.step, &q.base, &q.step]);
    let (b1, s1) = (lat.scale(&p.base), lat.scale(&p.step));
    let (b2, s2) = (lat.scale(&q.base), lat.scale(&q.step));
    let (x0, l) = crt(&b1, &s1, &b2, &s2)?;
    let floor = b1.max(b2);
    let start = &floor + (x0 - &floor).mod_floor(&l);
    Progression::new(lat.unscale(start), lat.unscale(l))
}

/// `p \ q`, split into isolated points and sub-progressions of `p`.
fn subtract_progression(
    p: &Progression,
    q: &Progression,
    points: &mut Vec<Rational>,
    progs: &mut Vec<Progression>,
    budget: &mut Budget,
) -> Result<()> {
    let Some(common) = intersect_progressions(p, q) else {
        progs.push(p.clone());
        return Ok(());
    };
    let ratio = common.step.clone() / p.step.clone();
    debug_assert!(ratio.is_integer());
    let ratio = ratio
        .numer()
        .to_usize()
        .filter(|&r| r <= RESIDUE_LIMIT)
        .ok_or_else(|| {
            Error::RepresentationOverflow(
                "progression difference splits into too many classes".into(),
            )
        })?;
    let k0 = p.index_of(&common.base).expect("intersection lies in p");
    budget.spend(k0.to_usize().unwrap_or(usize::MAX))?;
    let mut k = BigInt::zero();
    while k < k0 {
        points.push(p.nth(&k));
        k += 1;
    }
    for r in 1..ratio {
        let base = p.nth(&(&k0 + r));
        progs.push(Progression::new(base, common.step.clone()).unwrap());
    }
    Ok(())
}

fn canonicalize(mut points: Vec<Rational>, mut progs: Vec<Progression>) -> Result<CountablePart> {
    progs.sort();
    progs.dedup();
    if progs.is_empty() {
        return Ok(CountablePart::from_points(points));
    }
    points.sort();
    points.dedup();

    let lat = Lattice::new(
        points
            .iter()
            .chain(progs.iter().flat_map(|p| [&p.base, &p.step])),
    );
    let fixed: BTreeSet<BigInt> = points.iter().map(|x| lat.scale(x)).collect();
    let scaled: Vec<(BigInt, BigInt)> = progs
        .iter()
        .map(|p| (lat.scale(&p.base), lat.scale(&p.step)))
        .collect();

    let overflow = || {
        Error::RepresentationOverflow(format!(
            "common period exceeds {RESIDUE_LIMIT} lattice units"
        ))
    };
    let mut common = BigInt::one();
    for (_, s) in &scaled {
        common = common.lcm(s);
        if common > BigInt::from(RESIDUE_LIMIT) {
            return Err(overflow());
        }
    }
    let l = common.to_usize().ok_or_else(overflow)?;

    // eventual residues modulo l
    let mut residues = vec![false; l];
    for (b, s) in &scaled {
        let s = s.to_usize().unwrap();
        let r0 = b.mod_floor(&BigInt::from(s)).to_usize().unwrap();
        for r in (r0..l).step_by(s) {
            residues[r] = true;
        }
    }
    let period = (1..=l)
        .filter(|d| l % d == 0)
        .find(|&d| (0..l).all(|r| residues[r] == residues[(r + d) % l]))
        .unwrap();
    let p_big = BigInt::from(period);

    // one progression of step `period` per eventually-full class
    let mut starts: Vec<Option<BigInt>> = vec![None; period];
    for c in (0..period).filter(|&c| residues[c]) {
        let c_big = BigInt::from(c);
        let mut subs: Vec<(BigInt, usize)> = Vec::new();
        for (b, s) in &scaled {
            let g = s.gcd(&p_big);
            let diff = (&c_big - b).mod_floor(&p_big);
            if !diff.mod_floor(&g).is_zero() {
                continue;
            }
            let pg = &p_big / &g;
            let k0 = ((&diff / &g) * mod_inverse(&(s / &g), &pg)).mod_floor(&pg);
            let x_start = b + s * k0;
            let beta = (x_start - &c_big) / &p_big;
            subs.push((beta, (s / &g).to_usize().unwrap()));
        }
        let in_class: BTreeSet<BigInt> = fixed
            .iter()
            .filter(|x| x.mod_floor(&p_big) == c_big)
            .map(|x| (x - &c_big) / &p_big)
            .collect();
        let y0 = earliest_full_start(&subs, &in_class);
        starts[c] = Some(&c_big + &p_big * y0);
    }

    let covered = |x: &BigInt| -> bool {
        let c = x.mod_floor(&p_big).to_usize().unwrap();
        matches!(&starts[c], Some(s) if x >= s)
    };
    let horizon = starts.iter().flatten().max().cloned().unwrap();
    let mut budget = Budget::new();
    let mut leftover: BTreeSet<BigInt> = fixed.iter().filter(|x| !covered(x)).cloned().collect();
    for (b, s) in &scaled {
        let mut x = b.clone();
        while x < horizon {
            if !covered(&x) {
                budget.spend(1)?;
                leftover.insert(x.clone());
            }
            x += s;
        }
    }

    let mut out_progs: Vec<Progression> = starts
        .into_iter()
        .flatten()
        .map(|s| Progression::new(lat.unscale(s), lat.unscale(p_big.clone())).unwrap())
        .collect();
    out_progs.sort();
    Ok(CountablePart {
        points: leftover.into_iter().map(|x| lat.unscale(x)).collect(),
        progressions: out_progs,
    })
}

/// Within one residue class (in class-index coordinates `y`), the smallest
/// `y0` such that every `y >= y0` is covered by a sub-progression
/// `{beta + t·m}` or by an isolated point.
///
/// Everything from the largest `beta` upwards is known to be covered. Below
/// it the active sub-progressions change only at the `beta` values, so each
/// segment between consecutive `beta`s is periodic modulo the lcm of the
/// active steps, and the largest gap in it is found per uncovered residue.
fn earliest_full_start(subs: &[(BigInt, usize)], fixed: &BTreeSet<BigInt>) -> BigInt {
    let mut betas: Vec<BigInt> = subs.iter().map(|(b, _)| b.clone()).collect();
    betas.sort();
    betas.dedup();
    betas.reverse();

    for j in 0..betas.len() {
        let top = &betas[j];
        let Some(low) = betas.get(j + 1) else {
            let mut y: BigInt = top - 1u32;
            while fixed.contains(&y) {
                y -= 1;
            }
            return y + 1;
        };
        let active: Vec<&(BigInt, usize)> = subs.iter().filter(|(b, _)| b <= low).collect();
        let m = active.iter().fold(1usize, |acc, (_, s)| acc.lcm(s));
        let mut hit = vec![false; m];
        for (b, s) in &active {
            let r0 = b.mod_floor(&BigInt::from(m)).to_usize().unwrap() % s;
            for r in (r0..m).step_by(*s) {
                hit[r] = true;
            }
        }
        let m_big = BigInt::from(m);
        let ceiling: BigInt = top - 1u32;
        let mut gap: Option<BigInt> = None;
        for u in (0..m).filter(|&u| !hit[u]) {
            let mut y = &ceiling - (&ceiling - BigInt::from(u)).mod_floor(&m_big);
            while &y >= low && fixed.contains(&y) {
                y -= &m_big;
            }
            if &y >= low && gap.as_ref().is_none_or(|g| &y > g) {
                gap = Some(y);
            }
        }
        if let Some(g) = gap {
            return g + 1;
        }
    }
    unreachable!("subs is nonempty for an eventually-full class")
}
