//! Measures on the representable universes and their σ-finite parts.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{ext_add, ext_sum, ExtNonNeg, Rational, SeriesDesc};
use crate::sets::{Cardinality, FinSet, FinUniverse, Progression, RealSet, Set, SetOps};
use crate::sigma_engine::{has_simple_extension_property, SigmaRingFin};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FinitenessClass {
    FiniteMeasure,
    SigmaFiniteInfinite,
    NotSigmaFinite,
}

impl FinitenessClass {
    pub fn is_sigma_finite(self) -> bool {
        self != FinitenessClass::NotSigmaFinite
    }

    /// For measures whose σ-finite sets are already known to be σ-finite.
    pub(crate) fn of_sigma_finite_value(value: &ExtNonNeg) -> Self {
        if value.is_finite() {
            FinitenessClass::FiniteMeasure
        } else {
            FinitenessClass::SigmaFiniteInfinite
        }
    }
}

impl fmt::Display for FinitenessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FinitenessClass::FiniteMeasure => "finite",
            FinitenessClass::SigmaFiniteInfinite => "sigma-finite",
            FinitenessClass::NotSigmaFinite => "not-sigma-finite",
        })
    }
}

/// Evaluation and finiteness classification on one kind of set.
pub trait Measure {
    type Set: SetOps;

    fn eval(&self, a: &Self::Set) -> Result<ExtNonNeg>;

    /// Whether `a` is of finite measure, a countable union of such sets, or neither.
    fn finiteness(&self, a: &Self::Set) -> Result<FinitenessClass>;
}

impl<M: Measure + ?Sized> Measure for &M {
    type Set = M::Set;

    fn eval(&self, a: &Self::Set) -> Result<ExtNonNeg> {
        (**self).eval(a)
    }

    fn finiteness(&self, a: &Self::Set) -> Result<FinitenessClass> {
        (**self).finiteness(a)
    }
}

/// A measure on an explicit finite σ-ring, given by atom weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tabulated {
    ring: Arc<SigmaRingFin>,
    weights: Vec<ExtNonNeg>,
}

impl Tabulated {
    /// `weights[i]` belongs to `ring.atoms()[i]`.
    pub fn new(ring: SigmaRingFin, weights: Vec<ExtNonNeg>) -> Result<Self> {
        if weights.len() != ring.atoms().len() {
            return Err(Error::PropertyViolated(format!(
                "{} weights for {} atoms",
                weights.len(),
                ring.atoms().len()
            )));
        }
        Ok(Tabulated {
            ring: Arc::new(ring),
            weights,
        })
    }

    /// Weights keyed by atom; every atom needs exactly one entry.
    pub fn from_map(ring: SigmaRingFin, map: &[(FinSet, ExtNonNeg)]) -> Result<Self> {
        let mut weights = Vec::with_capacity(ring.atoms().len());
        for atom in ring.atoms() {
            let mut hits = map.iter().filter(|(a, _)| a == atom);
            match (hits.next(), hits.next()) {
                (Some((_, w)), None) => weights.push(w.clone()),
                (None, _) => {
                    return Err(Error::PropertyViolated(format!(
                        "atom {atom} has no weight"
                    )))
                }
                (Some(_), Some(_)) => {
                    return Err(Error::PropertyViolated(format!(
                        "atom {atom} weighted twice"
                    )))
                }
            }
        }
        if let Some((a, _)) = map.iter().find(|(a, _)| !ring.atoms().contains(a)) {
            return Err(Error::PropertyViolated(format!(
                "{a} is not an atom of the ring"
            )));
        }
        Tabulated::new(ring, weights)
    }

    /// The power set of `universe` with one weight per point.
    pub fn power_set(universe: &Arc<FinUniverse>, weights: Vec<ExtNonNeg>) -> Result<Self> {
        let singles: Vec<u128> = (0..universe.len()).map(|i| 1u128 << i).collect();
        let ring = SigmaRingFin::from_atom_bits(universe, singles, usize::MAX)?;
        Tabulated::new(ring, weights)
    }

    pub fn ring(&self) -> &SigmaRingFin {
        &self.ring
    }

    pub fn weights(&self) -> &[ExtNonNeg] {
        &self.weights
    }

    pub fn universe(&self) -> &Arc<FinUniverse> {
        self.ring.universe()
    }

    fn parts(&self, a: &FinSet) -> Result<Vec<usize>> {
        self.ring
            .decompose(a)
            .ok_or_else(|| Error::NotMeasurable(format!("{a} is not in the σ-ring")))
    }

    pub fn eval_fin(&self, a: &FinSet) -> Result<ExtNonNeg> {
        Ok(self
            .parts(a)?
            .into_iter()
            .map(|i| self.weights[i].clone())
            .sum())
    }

    pub fn finiteness_fin(&self, a: &FinSet) -> Result<FinitenessClass> {
        let parts = self.parts(a)?;
        Ok(if parts.iter().any(|&i| self.weights[i].is_infinite()) {
            FinitenessClass::NotSigmaFinite
        } else {
            FinitenessClass::FiniteMeasure
        })
    }

    /// The measure restricted to the σ-ring generated by its finite atoms.
    pub fn sigma_finite_part(&self) -> Result<Tabulated> {
        let (atoms, weights): (Vec<u128>, Vec<ExtNonNeg>) = self
            .ring
            .atoms()
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| w.is_finite())
            .map(|(a, w)| (a.bits(), w.clone()))
            .unzip();
        let ring = SigmaRingFin::from_atom_bits(self.universe(), atoms, usize::MAX)?;
        // atoms keep their relative order, so weights stay aligned
        Tabulated::new(ring, weights)
    }
}

impl Measure for Tabulated {
    type Set = FinSet;

    fn eval(&self, a: &FinSet) -> Result<ExtNonNeg> {
        self.eval_fin(a)
    }

    fn finiteness(&self, a: &FinSet) -> Result<FinitenessClass> {
        self.finiteness_fin(a)
    }
}

/// Weights along a progression, indexed by `k` in `base + k·step`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightRule {
    Constant(ExtNonNeg),
    /// `first · ratio^k`, with `0 <= ratio < 1`.
    Geometric {
        first: Rational,
        ratio: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Point { at: Rational, weight: ExtNonNeg },
    Progression { prog: Progression, rule: WeightRule },
}

impl Generator {
    fn has_infinite_weight(&self) -> bool {
        match self {
            Generator::Point { weight, .. } => weight.is_infinite(),
            Generator::Progression {
                rule: WeightRule::Constant(c),
                ..
            } => c.is_infinite(),
            Generator::Progression { .. } => false,
        }
    }

    fn meets(&self, a: &RealSet) -> Result<bool> {
        match self {
            Generator::Point { at, .. } => Ok(a.contains(at)),
            Generator::Progression { prog, .. } => {
                Ok(!a.intersect(&RealSet::progression(prog.clone()))?.is_empty())
            }
        }
    }

    fn eval(&self, a: &RealSet) -> Result<ExtNonNeg> {
        let (prog, rule) = match self {
            Generator::Point { at, weight } => {
                return Ok(if a.contains(at) {
                    weight.clone()
                } else {
                    ExtNonNeg::zero()
                })
            }
            Generator::Progression { prog, rule } => (prog, rule),
        };
        let hit = a.intersect(&RealSet::progression(prog.clone()))?;
        let hit = hit.included();
        let mut terms = Vec::new();
        for x in hit.points() {
            let k = prog.index_of(x).expect("point lies on the progression");
            terms.push(match rule {
                WeightRule::Constant(c) => c.clone(),
                WeightRule::Geometric { first, ratio } => {
                    ExtNonNeg::finite(first * &ratio.pow(&k.to_biguint().expect("k >= 0")))
                }
            });
        }
        let mut total = ext_sum(&SeriesDesc::FiniteList(terms));
        for sub in hit.progressions() {
            let series = match rule {
                WeightRule::Constant(c) => SeriesDesc::ConstantTail(c.clone()),
                WeightRule::Geometric { first, ratio } => {
                    let k0 = prog
                        .index_of(sub.base())
                        .expect("sub-progression starts on the progression");
                    let stride = sub.step() / prog.step();
                    debug_assert!(stride.is_integer());
                    let stride = stride.numer().to_biguint().expect("positive stride");
                    let a = first * &ratio.pow(&k0.to_biguint().expect("k >= 0"));
                    SeriesDesc::geometric(a, ratio.pow(&stride)).expect("ratio below one")
                }
            };
            total = ext_add(&total, &ext_sum(&series));
        }
        Ok(total)
    }
}

/// A purely atomic measure on the line: a finite sum of point masses and
/// weighted progressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atomic {
    generators: Vec<Generator>,
}

impl Atomic {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        for g in &generators {
            if let Generator::Progression {
                rule: WeightRule::Geometric { first, ratio },
                ..
            } = g
            {
                if first.is_negative() || ratio.is_negative() || *ratio >= Rational::one() {
                    return Err(Error::PropertyViolated(
                        "geometric weights need first >= 0 and 0 <= ratio < 1".into(),
                    ));
                }
            }
        }
        Ok(Atomic { generators })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn is_sigma_finite(&self) -> bool {
        !self.generators.iter().any(Generator::has_infinite_weight)
    }
}

/// Which ground a measure lives on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ground {
    Real,
    Finite(Arc<FinUniverse>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasureSpec {
    FiniteTabulated(Tabulated),
    CountableAtomic(Atomic),
    LebesgueLine,
    CountingLine,
    DiracAt(Rational),
    /// Restriction of the inner measure to its σ-finite sets.
    SigmaFiniteComponent(Box<MeasureSpec>),
}

fn real<'a>(m: &MeasureSpec, a: &'a Set) -> Result<&'a RealSet> {
    a.as_real().ok_or_else(|| {
        Error::UniverseMismatch(format!("{m} is a measure on the real line, got {a}"))
    })
}

impl MeasureSpec {
    pub fn ground(&self) -> Ground {
        match self {
            MeasureSpec::FiniteTabulated(t) => Ground::Finite(t.universe().clone()),
            MeasureSpec::SigmaFiniteComponent(inner) => inner.ground(),
            _ => Ground::Real,
        }
    }

    fn tabulated_set<'a>(&self, t: &Tabulated, a: &'a Set) -> Result<&'a FinSet> {
        match a {
            Set::Finite(s) if crate::sets::same_universe(s.universe(), t.universe()) => Ok(s),
            _ => Err(Error::UniverseMismatch(format!(
                "{a} is not over the ground of {self}"
            ))),
        }
    }
}

impl Measure for MeasureSpec {
    type Set = Set;

    fn eval(&self, a: &Set) -> Result<ExtNonNeg> {
        match self {
            MeasureSpec::FiniteTabulated(t) => t.eval_fin(self.tabulated_set(t, a)?),
            MeasureSpec::CountableAtomic(m) => {
                let a = real(self, a)?;
                let mut total = ExtNonNeg::zero();
                for g in &m.generators {
                    total = ext_add(&total, &g.eval(a)?);
                }
                Ok(total)
            }
            MeasureSpec::LebesgueLine => Ok(real(self, a)?.lebesgue_length()),
            MeasureSpec::CountingLine => Ok(match real(self, a)?.cardinality() {
                Cardinality::Empty => ExtNonNeg::zero(),
                Cardinality::Finite(n) => ExtNonNeg::integer(n as u64),
                Cardinality::CountablyInfinite | Cardinality::Uncountable => ExtNonNeg::Infinity,
            }),
            MeasureSpec::DiracAt(p) => Ok(if real(self, a)?.contains(p) {
                ExtNonNeg::one()
            } else {
                ExtNonNeg::zero()
            }),
            MeasureSpec::SigmaFiniteComponent(inner) => match inner.finiteness(a)? {
                FinitenessClass::NotSigmaFinite => Err(Error::NotMeasurable(format!(
                    "{a} is not σ-finite for {inner}"
                ))),
                _ => inner.eval(a),
            },
        }
    }

    fn finiteness(&self, a: &Set) -> Result<FinitenessClass> {
        match self {
            MeasureSpec::FiniteTabulated(t) => t.finiteness_fin(self.tabulated_set(t, a)?),
            MeasureSpec::CountableAtomic(m) => {
                let s = real(self, a)?;
                for g in m.generators.iter().filter(|g| g.has_infinite_weight()) {
                    if g.meets(s)? {
                        return Ok(FinitenessClass::NotSigmaFinite);
                    }
                }
                Ok(FinitenessClass::of_sigma_finite_value(&self.eval(a)?))
            }
            MeasureSpec::LebesgueLine | MeasureSpec::DiracAt(_) => {
                Ok(FinitenessClass::of_sigma_finite_value(&self.eval(a)?))
            }
            MeasureSpec::CountingLine => Ok(match real(self, a)?.cardinality() {
                Cardinality::Uncountable => FinitenessClass::NotSigmaFinite,
                Cardinality::CountablyInfinite => FinitenessClass::SigmaFiniteInfinite,
                Cardinality::Empty | Cardinality::Finite(_) => FinitenessClass::FiniteMeasure,
            }),
            MeasureSpec::SigmaFiniteComponent(inner) => match inner.finiteness(a)? {
                FinitenessClass::NotSigmaFinite => Err(Error::NotMeasurable(format!(
                    "{a} is not σ-finite for {inner}"
                ))),
                c => Ok(c),
            },
        }
    }
}

/// `μ^σ`: the measure restricted to its σ-finite sets.
pub fn sigma_finite_component(m: &MeasureSpec) -> Result<MeasureSpec> {
    Ok(match m {
        MeasureSpec::FiniteTabulated(t) => MeasureSpec::FiniteTabulated(t.sigma_finite_part()?),
        MeasureSpec::LebesgueLine
        | MeasureSpec::DiracAt(_)
        | MeasureSpec::SigmaFiniteComponent(_) => m.clone(),
        MeasureSpec::CountableAtomic(a) if a.is_sigma_finite() => m.clone(),
        MeasureSpec::CountableAtomic(_) | MeasureSpec::CountingLine => {
            MeasureSpec::SigmaFiniteComponent(Box::new(m.clone()))
        }
    })
}

/// Extends a measure on `inner` to `outer` by `∞` on every set outside `inner`.
pub fn infinity_extension(inner: &Tabulated, outer: &SigmaRingFin) -> Result<Tabulated> {
    if !has_simple_extension_property(outer, inner.ring()) {
        return Err(Error::PropertyViolated(
            "the σ-ring pair lacks the simple extension property".into(),
        ));
    }
    let weights = outer
        .atoms()
        .iter()
        .map(|a| match inner.ring().atoms().iter().position(|b| b == a) {
            Some(i) => inner.weights()[i].clone(),
            None => ExtNonNeg::Infinity,
        })
        .collect();
    Tabulated::new(outer.clone(), weights)
}

impl fmt::Display for Tabulated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("tabulated{")?;
        for (i, (a, w)) in self.ring.atoms().iter().zip(&self.weights).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if a.len() == 1 {
                write!(
                    f,
                    "{}:{w}",
                    a.universe().labels()[a.indices().next().unwrap()]
                )?;
            } else {
                write!(f, "{a}:{w}")?;
            }
        }
        f.write_str("}")?;
        // the ground is spelled out unless the atoms list its labels in order
        let order: Vec<usize> = self.ring.atoms().iter().flat_map(FinSet::indices).collect();
        if !order.iter().copied().eq(0..self.universe().len()) {
            write!(f, " on {}", FinSet::full(self.universe()))?;
        }
        Ok(())
    }
}

impl fmt::Display for Atomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("atomic{")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match g {
                Generator::Point { at, weight } => write!(f, "{at}:{weight}")?,
                Generator::Progression { prog, rule } => {
                    write!(f, "prog({}, {}):", prog.base(), prog.step())?;
                    match rule {
                        WeightRule::Constant(c) => write!(f, "const({c})")?,
                        WeightRule::Geometric { first, ratio } => {
                            write!(f, "geom({first}, {ratio})")?
                        }
                    }
                }
            }
        }
        f.write_str("}")
    }
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureSpec::FiniteTabulated(t) => write!(f, "{t}"),
            MeasureSpec::CountableAtomic(a) => write!(f, "{a}"),
            MeasureSpec::LebesgueLine => f.write_str("lebesgue"),
            MeasureSpec::CountingLine => f.write_str("counting"),
            MeasureSpec::DiracAt(p) => write!(f, "dirac({p})"),
            MeasureSpec::SigmaFiniteComponent(inner) => write!(f, "component({inner})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma_engine::{generate_sigma_algebra, generate_sigma_ring};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn fin(n: i64) -> ExtNonNeg {
        ExtNonNeg::finite(q(n, 1))
    }

    fn closed(a: i64, b: i64) -> Set {
        Set::Real(RealSet::closed(q(a, 1), q(b, 1)))
    }

    fn pts(xs: &[i64]) -> Set {
        Set::Real(RealSet::points(xs.iter().map(|&x| q(x, 1))))
    }

    fn prog(b: i64, s: i64) -> Progression {
        Progression::new(q(b, 1), q(s, 1)).unwrap()
    }

    #[test]
    fn line_measures() {
        let l = MeasureSpec::LebesgueLine;
        let one_and_five = closed(0, 1).union(&pts(&[5])).unwrap();
        assert_eq!(l.eval(&one_and_five).unwrap(), fin(1));
        let c = MeasureSpec::CountingLine;
        assert_eq!(c.eval(&pts(&[0, 1, 2])).unwrap(), fin(3));
        assert_eq!(c.eval(&closed(0, 1)).unwrap(), ExtNonNeg::Infinity);
        let d = MeasureSpec::DiracAt(q(1, 2));
        assert_eq!(d.eval(&closed(0, 1)).unwrap(), fin(1));
        assert_eq!(d.eval(&pts(&[0])).unwrap(), fin(0));
    }

    #[test]
    fn finiteness_examples() {
        let c = MeasureSpec::CountingLine;
        let naturals = Set::Real(RealSet::progression(prog(0, 1)));
        assert_eq!(
            c.finiteness(&naturals).unwrap(),
            FinitenessClass::SigmaFiniteInfinite
        );
        assert_eq!(
            c.finiteness(&closed(0, 1)).unwrap(),
            FinitenessClass::NotSigmaFinite
        );
        let l = MeasureSpec::LebesgueLine;
        assert_eq!(
            l.finiteness(&Set::Real(RealSet::real_line())).unwrap(),
            FinitenessClass::SigmaFiniteInfinite
        );

        let u = FinUniverse::new(["a", "b"]).unwrap();
        let t = MeasureSpec::FiniteTabulated(
            Tabulated::power_set(&u, vec![ExtNonNeg::Infinity, fin(2)]).unwrap(),
        );
        let b = Set::Finite(FinSet::from_labels(&u, &["b"]).unwrap());
        assert_eq!(t.finiteness(&b).unwrap(), FinitenessClass::FiniteMeasure);
        assert!(matches!(
            t.eval(&closed(0, 1)),
            Err(Error::UniverseMismatch(_))
        ));
    }

    #[test]
    fn tabulated_rejects_sets_outside_the_ring() {
        let u = FinUniverse::new(["1", "2", "3"]).unwrap();
        let ring =
            generate_sigma_ring(&u, &[FinSet::from_labels(&u, &["1", "2"]).unwrap()]).unwrap();
        let t = MeasureSpec::FiniteTabulated(Tabulated::new(ring, vec![fin(4)]).unwrap());
        let one = Set::Finite(FinSet::from_labels(&u, &["1"]).unwrap());
        assert!(matches!(t.eval(&one), Err(Error::NotMeasurable(_))));
    }

    #[test]
    fn components() {
        let c = sigma_finite_component(&MeasureSpec::CountingLine).unwrap();
        assert!(matches!(
            c.eval(&closed(0, 1)),
            Err(Error::NotMeasurable(_))
        ));
        assert_eq!(c.eval(&pts(&[1, 2])).unwrap(), fin(2));
        assert_eq!(
            sigma_finite_component(&MeasureSpec::LebesgueLine).unwrap(),
            MeasureSpec::LebesgueLine
        );

        let u = FinUniverse::new(["a", "b"]).unwrap();
        let t = MeasureSpec::FiniteTabulated(
            Tabulated::power_set(&u, vec![ExtNonNeg::Infinity, fin(2)]).unwrap(),
        );
        let comp = sigma_finite_component(&t).unwrap();
        let s = |l: &[&str]| Set::Finite(FinSet::from_labels(&u, l).unwrap());
        assert_eq!(comp.eval(&s(&["b"])).unwrap(), fin(2));
        assert!(matches!(
            comp.eval(&s(&["a"])),
            Err(Error::NotMeasurable(_))
        ));
        assert!(matches!(
            comp.eval(&s(&["a", "b"])),
            Err(Error::NotMeasurable(_))
        ));
        assert_eq!(comp.to_string(), "tabulated{b:2} on {a, b}");
    }

    #[test]
    fn infinity_extension_examples() {
        let u = FinUniverse::new(["1", "2"]).unwrap();
        let one = FinSet::from_labels(&u, &["1"]).unwrap();
        let inner_ring = generate_sigma_ring(&u, std::slice::from_ref(&one)).unwrap();
        let inner = Tabulated::new(inner_ring, vec![fin(3)]).unwrap();
        let outer = generate_sigma_algebra(&u, std::slice::from_ref(&one)).unwrap();
        let ext = infinity_extension(&inner, &outer).unwrap();
        let s = |l: &[&str]| FinSet::from_labels(&u, l).unwrap();
        assert_eq!(ext.eval_fin(&s(&["1"])).unwrap(), fin(3));
        assert_eq!(ext.eval_fin(&s(&["2"])).unwrap(), ExtNonNeg::Infinity);
        assert_eq!(ext.eval_fin(&s(&["1", "2"])).unwrap(), ExtNonNeg::Infinity);
        // additivity over the only nontrivial split
        assert_eq!(
            ext.eval_fin(&s(&["1", "2"])).unwrap(),
            ext_add(
                &ext.eval_fin(&s(&["1"])).unwrap(),
                &ext.eval_fin(&s(&["2"])).unwrap()
            )
        );

        let same = infinity_extension(&ext, &outer).unwrap();
        assert_eq!(same, ext);

        let coarse = generate_sigma_ring(&u, &[FinSet::full(&u)]).unwrap();
        let bad = Tabulated::new(coarse, vec![fin(1)]).unwrap();
        assert!(matches!(
            infinity_extension(&bad, &outer),
            Err(Error::PropertyViolated(_))
        ));
    }

    #[test]
    fn atomic_series() {
        let m = MeasureSpec::CountableAtomic(
            Atomic::new(vec![
                Generator::Point {
                    at: q(-1, 1),
                    weight: fin(1),
                },
                Generator::Progression {
                    prog: prog(0, 1),
                    rule: WeightRule::Geometric {
                        first: q(1, 1),
                        ratio: q(1, 2),
                    },
                },
                Generator::Progression {
                    prog: Progression::new(q(1, 2), q(1, 1)).unwrap(),
                    rule: WeightRule::Constant(ExtNonNeg::Infinity),
                },
            ])
            .unwrap(),
        );
        let naturals = Set::Real(RealSet::progression(prog(0, 1)));
        assert_eq!(m.eval(&naturals).unwrap(), fin(2));
        // even indices: 1 + 1/4 + 1/16 + … = 4/3
        let evens = Set::Real(RealSet::progression(prog(0, 2)));
        assert_eq!(m.eval(&evens).unwrap(), ExtNonNeg::finite(q(4, 3)));
        // [1, inf) minus 4, 6, 8, …: still meets the infinite half-integers
        let tail = Set::Real(
            RealSet::from_interval(
                crate::sets::Interval::new(Some(q(1, 1)), true, None, false).unwrap(),
            )
            .difference(&RealSet::progression(prog(4, 2)))
            .unwrap(),
        );
        assert_eq!(m.eval(&tail).unwrap(), ExtNonNeg::Infinity);
        assert_eq!(
            m.finiteness(&tail).unwrap(),
            FinitenessClass::NotSigmaFinite
        );
        // 1/2 + 1/4 from 1 and 2, then 1/8 + 1/32 + … = 1/6 from 3, 5, 7, …
        let whole_numbers_only = tail.intersect(&naturals).unwrap();
        assert_eq!(
            m.eval(&whole_numbers_only).unwrap(),
            ExtNonNeg::finite(q(1, 2) + q(1, 4) + q(1, 6))
        );
        assert_eq!(
            m.finiteness(&whole_numbers_only).unwrap(),
            FinitenessClass::FiniteMeasure
        );
        assert_eq!(m.eval(&closed(-2, -1)).unwrap(), fin(1));
    }
}
