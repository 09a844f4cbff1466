//! Integrals of simple functions, the tensor functional on rectangles and a
//! Fubini–Tonelli checker that reports all three values of the identity.

use std::fmt;

use crate::error::{Error, Result};
use crate::measures::Measure;
use crate::numerics::{ext_add, ext_scale, ExtNonNeg, Rational};
use crate::product::ProductMeasure;
use crate::sets::{venn, RectUnion, SetOps};

/// A signed integral value; `Undefined` stands for `∞ - ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegralValue {
    Finite(Rational),
    PosInfinity,
    NegInfinity,
    Undefined,
}

impl IntegralValue {
    pub fn zero() -> Self {
        IntegralValue::Finite(Rational::zero())
    }

    /// `pos - neg`.
    pub fn from_parts(pos: &ExtNonNeg, neg: &ExtNonNeg) -> Self {
        match (pos.finite_value(), neg.finite_value()) {
            (Some(p), Some(n)) => IntegralValue::Finite(p - n),
            (None, Some(_)) => IntegralValue::PosInfinity,
            (Some(_), None) => IntegralValue::NegInfinity,
            (None, None) => IntegralValue::Undefined,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        use IntegralValue::*;
        match (self, other) {
            (Undefined, _) | (_, Undefined) => Undefined,
            (Finite(a), Finite(b)) => Finite(a + b),
            (PosInfinity, NegInfinity) | (NegInfinity, PosInfinity) => Undefined,
            (PosInfinity, _) | (_, PosInfinity) => PosInfinity,
            (NegInfinity, _) | (_, NegInfinity) => NegInfinity,
        }
    }

    /// `self · w` with `x · 0 = 0` for every `x`.
    pub fn scale(&self, w: &ExtNonNeg) -> Self {
        use IntegralValue::*;
        if w.is_zero() {
            return IntegralValue::zero();
        }
        match (self, w.finite_value()) {
            (Finite(a), Some(x)) => Finite(a * x),
            (Finite(a), None) if a.is_zero() => IntegralValue::zero(),
            (Finite(a), None) if a.is_positive() => PosInfinity,
            (Finite(_), None) => NegInfinity,
            (other, _) => other.clone(),
        }
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            IntegralValue::Finite(r) => Some(r),
            _ => None,
        }
    }
}

impl From<ExtNonNeg> for IntegralValue {
    fn from(x: ExtNonNeg) -> Self {
        match x {
            ExtNonNeg::Finite(r) => IntegralValue::Finite(r),
            ExtNonNeg::Infinity => IntegralValue::PosInfinity,
        }
    }
}

impl fmt::Display for IntegralValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegralValue::Finite(r) => write!(f, "{r}"),
            IntegralValue::PosInfinity => f.write_str("inf"),
            IntegralValue::NegInfinity => f.write_str("-inf"),
            IntegralValue::Undefined => f.write_str("undefined"),
        }
    }
}

/// `Σ cᵢ · 1_{Aᵢ}`, kept with pairwise disjoint supports, distinct nonzero
/// coefficients, sorted by coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleFunction<S> {
    terms: Vec<(Rational, S)>,
}

impl<S: SetOps> SimpleFunction<S> {
    pub fn zero() -> Self {
        SimpleFunction { terms: Vec::new() }
    }

    pub fn indicator(s: S) -> Result<Self> {
        Self::new(vec![(Rational::one(), s)])
    }

    /// Any finite combination; overlapping supports add up.
    pub fn new(terms: Vec<(Rational, S)>) -> Result<Self> {
        let terms: Vec<(Rational, S)> = terms
            .into_iter()
            .filter(|(c, s)| !c.is_zero() && !s.is_empty())
            .collect();
        let mut disjoint = true;
        'outer: for (i, (_, a)) in terms.iter().enumerate() {
            for (_, b) in &terms[i + 1..] {
                if !a.intersect(b)?.is_empty() {
                    disjoint = false;
                    break 'outer;
                }
            }
        }
        if disjoint {
            return Self::from_disjoint(terms);
        }
        let supports: Vec<S> = terms.iter().map(|(_, s)| s.clone()).collect();
        let pieces = venn(&supports)?
            .into_iter()
            .map(|(piece, idx)| (idx.iter().map(|&i| terms[i].0.clone()).sum(), piece))
            .collect();
        Self::from_disjoint(pieces)
    }

    /// Merges equal coefficients of terms with disjoint supports.
    fn from_disjoint(terms: Vec<(Rational, S)>) -> Result<Self> {
        let mut merged: Vec<(Rational, S)> = Vec::with_capacity(terms.len());
        for (c, s) in terms {
            if c.is_zero() || s.is_empty() {
                continue;
            }
            match merged.iter_mut().find(|(d, _)| *d == c) {
                Some((_, t)) => *t = t.union(&s)?,
                None => merged.push((c, s)),
            }
        }
        merged.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(SimpleFunction { terms: merged })
    }

    pub fn terms(&self) -> &[(Rational, S)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.is_positive())
    }

    /// `{x : f(x) ≠ 0}`; `None` for the zero function.
    pub fn support(&self) -> Result<Option<S>> {
        let mut acc: Option<S> = None;
        for (_, s) in &self.terms {
            acc = Some(match acc {
                Some(a) => a.union(s)?,
                None => s.clone(),
            });
        }
        Ok(acc)
    }

    /// Applies `g` to every value; `g(0)` must be `0`.
    pub fn map_values(&self, g: impl Fn(&Rational) -> Rational) -> Result<Self> {
        Self::from_disjoint(self.terms.iter().map(|(c, s)| (g(c), s.clone())).collect())
    }

    pub(crate) fn map_sets<T: SetOps>(&self, g: impl Fn(&S) -> T) -> SimpleFunction<T> {
        SimpleFunction {
            terms: self.terms.iter().map(|(c, s)| (c.clone(), g(s))).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Result<Self> {
        self.map_values(|c| c * k)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(terms)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Rational::integer(-1))?)
    }

    pub fn abs(&self) -> Result<Self> {
        self.map_values(Rational::abs)
    }

    /// `min(f, 1)`.
    pub fn min_one(&self) -> Result<Self> {
        self.map_values(|c| c.clone().min(Rational::one()))
    }

    pub fn positive_part(&self) -> Result<Self> {
        self.map_values(|c| c.clone().max(Rational::zero()))
    }

    /// `max(-f, 0)`.
    pub fn negative_part(&self) -> Result<Self> {
        self.map_values(|c| (-c).max(Rational::zero()))
    }
}

impl<S: fmt::Display> fmt::Display for SimpleFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, s)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*ind({s})")?;
        }
        Ok(())
    }
}

/// Every support with a nonzero coefficient has finite measure.
pub fn is_integrable<M: Measure>(f: &SimpleFunction<M::Set>, m: &M) -> Result<bool> {
    for (_, s) in f.terms() {
        if !m.eval(s)?.is_finite() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ cᵢ · μ(Aᵢ)` for an integrable `f`.
pub fn integrate<M: Measure>(f: &SimpleFunction<M::Set>, m: &M) -> Result<Rational> {
    let mut total = Rational::zero();
    for (c, s) in f.terms() {
        match m.eval(s)? {
            ExtNonNeg::Finite(v) => total += &(c * &v),
            ExtNonNeg::Infinity => {
                return Err(Error::NotIntegrable(format!(
                    "support {s} has infinite measure"
                )))
            }
        }
    }
    Ok(total)
}

/// `Σ cᵢ · μ(Aᵢ)` in `[0, ∞]` for `f >= 0`.
pub fn extended_integral<M: Measure>(f: &SimpleFunction<M::Set>, m: &M) -> Result<ExtNonNeg> {
    let mut total = ExtNonNeg::zero();
    for (c, s) in f.terms() {
        if c.is_negative() {
            return Err(Error::PropertyViolated(format!("negative coefficient {c}")));
        }
        total = ext_add(&total, &ext_scale(c, &m.eval(s)?));
    }
    Ok(total)
}

/// `∫ f⁺ - ∫ f⁻`, possibly infinite or undefined.
pub fn signed_integral<M: Measure>(f: &SimpleFunction<M::Set>, m: &M) -> Result<IntegralValue> {
    let pos = extended_integral(&f.positive_part()?, m)?;
    let neg = extended_integral(&f.negative_part()?, m)?;
    Ok(IntegralValue::from_parts(&pos, &neg))
}

/// Whether `μ({x : f(x) ≠ g(x)}) = 0`.
pub fn ae_equal<M: Measure>(
    f: &SimpleFunction<M::Set>,
    g: &SimpleFunction<M::Set>,
    m: &M,
) -> Result<bool> {
    match f.sub(g)?.support()? {
        None => Ok(true),
        Some(d) => Ok(m.eval(&d)?.is_zero()),
    }
}

pub type ProductFunction<A, B> = SimpleFunction<RectUnion<A, B>>;

/// `∫ (s ↦ ∫ f(s, ·) dν) dμ`.
///
/// The first factor is cut into the Venn pieces of all first sides, on which
/// every section is constant. Pieces of μ-measure zero contribute nothing,
/// whatever the inner integral is there.
pub fn iterated_integral<L: Measure, R: Measure>(
    f: &ProductFunction<L::Set, R::Set>,
    mu: &L,
    nu: &R,
) -> Result<IntegralValue> {
    let mut terms = Vec::with_capacity(f.terms().len());
    let mut firsts = Vec::new();
    for (c, u) in f.terms() {
        let u = u.by_sections()?;
        firsts.extend(u.rects().iter().map(|(a, _)| a.clone()));
        terms.push((c, u));
    }
    let mut total = IntegralValue::zero();
    for (piece, _) in venn(&firsts)? {
        let weight = mu.eval(&piece)?;
        if weight.is_zero() {
            continue;
        }
        let (mut pos, mut neg) = (ExtNonNeg::zero(), ExtNonNeg::zero());
        for (c, u) in &terms {
            if let Some(section) = u.section_over(&piece)? {
                let v = nu.eval(&section)?;
                if c.is_positive() {
                    pos = ext_add(&pos, &ext_scale(c, &v));
                } else {
                    neg = ext_add(&neg, &ext_scale(&-*c, &v));
                }
            }
        }
        total = total.add(&IntegralValue::from_parts(&pos, &neg).scale(&weight));
    }
    Ok(total)
}

fn transposed<A: SetOps, B: SetOps>(f: &ProductFunction<A, B>) -> ProductFunction<B, A> {
    f.map_sets(RectUnion::transpose)
}

/// `Σ cᵢ · μ(Aᵢ) · ν(Bᵢ)` over the rectangles of `f`, each side of finite measure.
pub fn tensor_functional<L: Measure, R: Measure>(
    f: &ProductFunction<L::Set, R::Set>,
    mu: &L,
    nu: &R,
) -> Result<Rational> {
    let mut total = Rational::zero();
    for (c, u) in f.terms() {
        for (a, b) in u.by_sections()?.rects() {
            let (va, vb) = (mu.eval(a)?, nu.eval(b)?);
            match (va.finite_value(), vb.finite_value()) {
                (Some(x), Some(y)) => total += &(c * &(x * y)),
                _ => {
                    return Err(Error::NotSimpleTensor(format!(
                        "({a} x {b}) has a side of infinite measure"
                    )))
                }
            }
        }
    }
    let value = IntegralValue::Finite(total.clone());
    assert_eq!(
        iterated_integral(f, mu, nu)?,
        value,
        "s-first order differs"
    );
    assert_eq!(
        iterated_integral(&transposed(f), nu, mu)?,
        value,
        "t-first order differs"
    );
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    AllEqual,
    HypothesisViolated(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralReport {
    pub product_value: IntegralValue,
    pub iterated_sv: IntegralValue,
    pub iterated_ts: IntegralValue,
    pub verdict: Verdict,
}

/// Computes `∫ f d(μ⊗ν)` and both iterated integrals. When `f` is
/// integrable, or nonnegative with σ-finite support, the three must agree;
/// otherwise the values are reported as they come out.
pub fn fubini_check<L: Measure, R: Measure>(
    f: &ProductFunction<L::Set, R::Set>,
    mu: &L,
    nu: &R,
) -> Result<IntegralReport> {
    let p = ProductMeasure::new(mu, nu);
    let (mut integrable, mut tonelli) = (true, f.is_nonnegative());
    let (mut pos, mut neg) = (ExtNonNeg::zero(), ExtNonNeg::zero());
    for (c, u) in f.terms() {
        let (value, class) = p.measure(u)?;
        integrable &= value.is_finite();
        tonelli &= class.is_sigma_finite();
        if c.is_positive() {
            pos = ext_add(&pos, &ext_scale(c, &value));
        } else {
            neg = ext_add(&neg, &ext_scale(&-c, &value));
        }
    }
    let product_value = IntegralValue::from_parts(&pos, &neg);
    let iterated_sv = iterated_integral(f, mu, nu)?;
    let iterated_ts = iterated_integral(&transposed(f), nu, mu)?;
    let verdict = if integrable || tonelli {
        assert!(
            product_value == iterated_sv && iterated_sv == iterated_ts,
            "Fubini-Tonelli identity fails for {f}: {product_value}, {iterated_sv}, {iterated_ts}"
        );
        Verdict::AllEqual
    } else if f.is_nonnegative() {
        Verdict::HypothesisViolated("support is not sigma-finite".into())
    } else {
        Verdict::HypothesisViolated("signed integrand is not integrable".into())
    };
    Ok(IntegralReport {
        product_value,
        iterated_sv,
        iterated_ts,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{sigma_finite_component, MeasureSpec, Tabulated};
    use crate::sets::{FinSet, FinUniverse, RealSet, Set};

    fn q(n: i64) -> Rational {
        Rational::integer(n)
    }

    fn closed(a: i64, b: i64) -> Set {
        Set::Real(RealSet::closed(q(a), q(b)))
    }

    fn pts(xs: &[(i64, i64)]) -> Set {
        Set::Real(RealSet::points(
            xs.iter().map(|&(n, d)| Rational::new(n, d)),
        ))
    }

    fn line() -> Set {
        Set::Real(RealSet::real_line())
    }

    fn ind(s: Set) -> SimpleFunction<Set> {
        SimpleFunction::indicator(s).unwrap()
    }

    const L: MeasureSpec = MeasureSpec::LebesgueLine;
    const D: MeasureSpec = MeasureSpec::CountingLine;

    #[test]
    fn integrability() {
        assert!(is_integrable(&ind(closed(0, 1)), &L).unwrap());
        assert!(!is_integrable(&ind(line()), &L).unwrap());
        assert!(!is_integrable(&ind(closed(0, 1)), &D).unwrap());
        assert!(matches!(
            integrate(&ind(line()), &L),
            Err(Error::NotIntegrable(_))
        ));
    }

    #[test]
    fn integrals() {
        let f = SimpleFunction::new(vec![(q(2), closed(0, 3))]).unwrap();
        assert_eq!(integrate(&f, &L).unwrap(), q(6));
        assert_eq!(integrate(&ind(pts(&[(0, 1), (1, 1)])), &D).unwrap(), q(2));
        assert_eq!(integrate(&ind(pts(&[(5, 1)])), &L).unwrap(), q(0));
        assert_eq!(
            extended_integral(&ind(line()), &L).unwrap(),
            ExtNonNeg::Infinity
        );
        assert_eq!(
            extended_integral(&SimpleFunction::zero(), &L).unwrap(),
            ExtNonNeg::zero()
        );

        let u = FinUniverse::new(["a"]).unwrap();
        let t = MeasureSpec::FiniteTabulated(
            Tabulated::power_set(&u, vec![ExtNonNeg::Infinity]).unwrap(),
        );
        let f = SimpleFunction::new(vec![(q(3), Set::Finite(FinSet::full(&u)))]).unwrap();
        assert_eq!(extended_integral(&f, &t).unwrap(), ExtNonNeg::Infinity);
    }

    #[test]
    fn overlapping_terms_add() {
        let f = SimpleFunction::new(vec![(q(1), closed(0, 2)), (q(2), closed(1, 3))]).unwrap();
        assert_eq!(f.terms().len(), 3);
        assert_eq!(integrate(&f, &L).unwrap(), q(2 + 2 * 2));
        let g = f.sub(&f).unwrap();
        assert!(g.is_zero());
        assert_eq!(f.min_one().unwrap().terms().len(), 1);
        assert_eq!(integrate(&f.min_one().unwrap(), &L).unwrap(), q(3));
    }

    #[test]
    fn almost_everywhere() {
        let f = ind(closed(0, 1));
        let g = ind(closed(0, 1).difference(&pts(&[(1, 2)])).unwrap());
        assert!(ae_equal(&f, &g, &L).unwrap());
        assert!(!ae_equal(&f, &g, &D).unwrap());
        assert!(ae_equal(&f, &f, &D).unwrap());
    }

    #[test]
    fn component_gives_the_same_integral() {
        let f = SimpleFunction::new(vec![
            (q(-3), pts(&[(0, 1), (2, 1)])),
            (q(5), pts(&[(7, 1)])),
        ])
        .unwrap();
        let comp = sigma_finite_component(&D).unwrap();
        assert_eq!(integrate(&f, &D).unwrap(), integrate(&f, &comp).unwrap());
    }

    fn rect(a: Set, b: Set) -> RectUnion<Set, Set> {
        RectUnion::rect(a, b)
    }

    #[test]
    fn tensor_examples() {
        let f = SimpleFunction::new(vec![
            (q(1), rect(closed(0, 2), pts(&[(0, 1)]))),
            (q(2), rect(closed(0, 1), pts(&[(1, 1)]))),
        ])
        .unwrap();
        assert_eq!(tensor_functional(&f, &L, &D).unwrap(), q(4));
        assert_eq!(
            tensor_functional(&ProductFunction::<Set, Set>::zero(), &L, &D).unwrap(),
            q(0)
        );
        let c = SimpleFunction::new(vec![(
            Rational::new(3, 2),
            rect(closed(0, 4), pts(&[(0, 1), (1, 1)])),
        )])
        .unwrap();
        assert_eq!(tensor_functional(&c, &L, &D).unwrap(), q(12));
        let bad = SimpleFunction::indicator(rect(line(), pts(&[(0, 1)]))).unwrap();
        assert!(matches!(
            tensor_functional(&bad, &L, &D),
            Err(Error::NotSimpleTensor(_))
        ));
    }

    #[test]
    fn fubini_examples() {
        let f = SimpleFunction::new(vec![
            (q(1), rect(closed(0, 2), pts(&[(0, 1)]))),
            (q(2), rect(closed(0, 1), pts(&[(1, 1)]))),
        ])
        .unwrap();
        let r = fubini_check(&f, &L, &D).unwrap();
        assert_eq!(r.verdict, Verdict::AllEqual);
        assert_eq!(r.product_value, IntegralValue::Finite(q(4)));

        let strip = SimpleFunction::indicator(rect(line(), pts(&[(0, 1)]))).unwrap();
        let r = fubini_check(&strip, &L, &D).unwrap();
        assert_eq!(r.verdict, Verdict::AllEqual);
        assert_eq!(r.product_value, IntegralValue::PosInfinity);

        let wall = SimpleFunction::indicator(rect(pts(&[(0, 1)]), line())).unwrap();
        let r = fubini_check(&wall, &L, &D).unwrap();
        assert!(matches!(r.verdict, Verdict::HypothesisViolated(_)));
        assert_eq!(r.product_value, IntegralValue::PosInfinity);
        assert_eq!(r.iterated_sv, IntegralValue::zero());
        assert_eq!(r.iterated_ts, IntegralValue::zero());
    }

    #[test]
    fn signed_fubini() {
        let f = SimpleFunction::new(vec![
            (q(3), rect(closed(0, 2), pts(&[(0, 1)]))),
            (q(-1), rect(closed(1, 4), pts(&[(0, 1), (1, 1)]))),
        ])
        .unwrap();
        let r = fubini_check(&f, &L, &D).unwrap();
        assert_eq!(r.verdict, Verdict::AllEqual);
        // 3·ℓ([0,2])·1 - ℓ([1,4])·2
        assert_eq!(r.product_value, IntegralValue::Finite(q(3 * 2 - 3 * 2)));

        let g = SimpleFunction::new(vec![
            (q(1), rect(line(), pts(&[(0, 1)]))),
            (q(-1), rect(line(), pts(&[(1, 1)]))),
        ])
        .unwrap();
        let r = fubini_check(&g, &L, &D).unwrap();
        assert_eq!(r.product_value, IntegralValue::Undefined);
        assert!(matches!(r.verdict, Verdict::HypothesisViolated(_)));
    }

    #[test]
    fn value_arithmetic() {
        use IntegralValue::*;
        assert_eq!(PosInfinity.add(&NegInfinity), Undefined);
        assert_eq!(Finite(q(-2)).scale(&ExtNonNeg::Infinity), NegInfinity);
        assert_eq!(Undefined.scale(&ExtNonNeg::zero()), IntegralValue::zero());
        assert_eq!(Undefined.to_string(), "undefined");
    }
}
