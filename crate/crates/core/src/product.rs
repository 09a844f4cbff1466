//! The product of two arbitrary measures on finite unions of rectangles.
//!
//! A nonempty rectangle with a non-σ-finite side gets measure `∞`; on the
//! σ-finite part the product is the classical one, `μ(A)·ν(B)` summed over
//! disjoint rectangles with `∞·0 = 0`.

use std::collections::HashMap;

use crate::error::Result;
use crate::measures::{FinitenessClass, Measure, Tabulated};
use crate::numerics::{ext_add, ext_mul, ExtNonNeg};
use crate::sets::{FinSet, RectUnion, SetOps, TripleRectUnion};
use crate::sigma_engine::product_sigma_ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductMeasure<L, R> {
    left: L,
    right: R,
}

impl<L: Measure, R: Measure> ProductMeasure<L, R> {
    pub fn new(left: L, right: R) -> Self {
        ProductMeasure { left, right }
    }

    pub fn left(&self) -> &L {
        &self.left
    }

    pub fn right(&self) -> &R {
        &self.right
    }

    /// Classifies the rectangle `a × b`.
    pub fn rect_classify(&self, a: &L::Set, b: &R::Set) -> Result<FinitenessClass> {
        let ca = self.left.finiteness(a)?;
        let cb = self.right.finiteness(b)?;
        if a.is_empty() || b.is_empty() {
            return Ok(FinitenessClass::FiniteMeasure);
        }
        if !ca.is_sigma_finite() || !cb.is_sigma_finite() {
            return Ok(FinitenessClass::NotSigmaFinite);
        }
        let value = ext_mul(&self.left.eval(a)?, &self.right.eval(b)?);
        Ok(FinitenessClass::of_sigma_finite_value(&value))
    }

    fn evaluate(&self, u: &RectUnion<L::Set, R::Set>) -> Result<(ExtNonNeg, FinitenessClass)> {
        let mut total = ExtNonNeg::zero();
        let mut sigma_finite = true;
        for (a, b) in u.by_sections()?.rects() {
            let ca = self.left.finiteness(a)?;
            let cb = self.right.finiteness(b)?;
            if !ca.is_sigma_finite() || !cb.is_sigma_finite() {
                sigma_finite = false;
            } else if sigma_finite {
                total = ext_add(&total, &ext_mul(&self.left.eval(a)?, &self.right.eval(b)?));
            }
        }
        if !sigma_finite {
            return Ok((ExtNonNeg::Infinity, FinitenessClass::NotSigmaFinite));
        }
        let class = FinitenessClass::of_sigma_finite_value(&total);
        Ok((total, class))
    }

    pub fn product_eval(&self, u: &RectUnion<L::Set, R::Set>) -> Result<ExtNonNeg> {
        Ok(self.evaluate(u)?.0)
    }

    pub fn set_classify(&self, u: &RectUnion<L::Set, R::Set>) -> Result<FinitenessClass> {
        Ok(self.evaluate(u)?.1)
    }

    /// Value and class together.
    pub fn measure(&self, u: &RectUnion<L::Set, R::Set>) -> Result<(ExtNonNeg, FinitenessClass)> {
        self.evaluate(u)
    }
}

impl<L: Measure, R: Measure> Measure for ProductMeasure<L, R> {
    type Set = RectUnion<L::Set, R::Set>;

    fn eval(&self, u: &Self::Set) -> Result<ExtNonNeg> {
        self.product_eval(u)
    }

    fn finiteness(&self, u: &Self::Set) -> Result<FinitenessClass> {
        self.set_classify(u)
    }
}

/// Value and class of a union of boxes under `(m1 ⊗ m2) ⊗ m3`, checked
/// against `m1 ⊗ (m2 ⊗ m3)`.
pub fn product3<A: Measure, B: Measure, C: Measure>(
    m1: &A,
    m2: &B,
    m3: &C,
    t: &TripleRectUnion<A::Set, B::Set, C::Set>,
) -> Result<(ExtNonNeg, FinitenessClass)> {
    let left = ProductMeasure::new(ProductMeasure::new(m1, m2), m3).measure(&t.left_nested()?)?;
    let right = ProductMeasure::new(m1, ProductMeasure::new(m2, m3)).measure(&t.right_nested()?)?;
    assert_eq!(left, right, "bracketings disagree on {t:?}");
    Ok(left)
}

pub fn product3_eval<A: Measure, B: Measure, C: Measure>(
    m1: &A,
    m2: &B,
    m3: &C,
    t: &TripleRectUnion<A::Set, B::Set, C::Set>,
) -> Result<ExtNonNeg> {
    Ok(product3(m1, m2, m3, t)?.0)
}

/// The product of two tabulated measures as a tabulated measure on the
/// product σ-ring.
pub fn finite_product_measure(mu: &Tabulated, nu: &Tabulated) -> Result<Tabulated> {
    let ring = product_sigma_ring(mu.ring(), nu.ring())?;
    let p = ProductMeasure::new(mu, nu);
    let mut by_bits: HashMap<u128, ExtNonNeg> = HashMap::new();
    for (a, wa) in mu.ring().atoms().iter().zip(mu.weights()) {
        for (b, wb) in nu.ring().atoms().iter().zip(nu.weights()) {
            let w = match p.rect_classify(a, b)? {
                FinitenessClass::NotSigmaFinite => ExtNonNeg::Infinity,
                _ => ext_mul(wa, wb),
            };
            by_bits.insert(FinSet::rect(ring.universe(), a, b)?.bits(), w);
        }
    }
    let weights = ring
        .atoms()
        .iter()
        .map(|atom| by_bits[&atom.bits()].clone())
        .collect();
    Tabulated::new(ring, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::MeasureSpec;
    use crate::numerics::Rational;
    use crate::sets::{FinUniverse, Progression, RealSet, Set};

    fn q(n: i64) -> Rational {
        Rational::integer(n)
    }

    fn fin(n: i64) -> ExtNonNeg {
        ExtNonNeg::finite(q(n))
    }

    fn closed(a: i64, b: i64) -> Set {
        Set::Real(RealSet::closed(q(a), q(b)))
    }

    fn pts(xs: &[i64]) -> Set {
        Set::Real(RealSet::points(xs.iter().map(|&x| q(x))))
    }

    fn line() -> Set {
        Set::Real(RealSet::real_line())
    }

    fn naturals() -> Set {
        Set::Real(RealSet::progression(Progression::new(q(0), q(1)).unwrap()))
    }

    fn ell_delta() -> ProductMeasure<MeasureSpec, MeasureSpec> {
        ProductMeasure::new(MeasureSpec::LebesgueLine, MeasureSpec::CountingLine)
    }

    #[test]
    fn rectangle_classes() {
        let p = ell_delta();
        use FinitenessClass::*;
        assert_eq!(
            p.rect_classify(&closed(0, 1), &pts(&[0, 1, 2])).unwrap(),
            FiniteMeasure
        );
        assert_eq!(
            p.rect_classify(&pts(&[0]), &line()).unwrap(),
            NotSigmaFinite
        );
        assert_eq!(
            p.rect_classify(&line(), &pts(&[5])).unwrap(),
            SigmaFiniteInfinite
        );
        let empty = Set::Real(RealSet::empty());
        assert_eq!(p.rect_classify(&empty, &line()).unwrap(), FiniteMeasure);
    }

    #[test]
    fn product_values() {
        let p = ell_delta();
        let r = RectUnion::rect(closed(0, 1), pts(&[0, 1, 2]));
        assert_eq!(p.product_eval(&r).unwrap(), fin(3));
        let vertical = RectUnion::rect(pts(&[0]), line());
        assert_eq!(p.product_eval(&vertical).unwrap(), ExtNonNeg::Infinity);
        let l_shape =
            RectUnion::from_rects(vec![(closed(0, 2), pts(&[0])), (closed(0, 1), pts(&[1]))])
                .unwrap();
        assert_eq!(p.product_eval(&l_shape).unwrap(), fin(3));
        let overlapping = RectUnion::from_rects(vec![
            (closed(0, 2), pts(&[0, 1])),
            (closed(1, 3), pts(&[1, 2])),
        ])
        .unwrap();
        assert_eq!(p.product_eval(&overlapping).unwrap(), fin(2 + 3 + 2));
    }

    #[test]
    fn set_classes() {
        let p = ell_delta();
        use FinitenessClass::*;
        let two = RectUnion::from_rects(vec![(closed(0, 1), pts(&[0])), (closed(2, 3), pts(&[1]))])
            .unwrap();
        assert_eq!(p.set_classify(&two).unwrap(), FiniteMeasure);
        assert_eq!(
            p.set_classify(&RectUnion::rect(line(), naturals()))
                .unwrap(),
            SigmaFiniteInfinite
        );
        assert_eq!(
            p.set_classify(&RectUnion::rect(closed(0, 1), closed(0, 1)))
                .unwrap(),
            NotSigmaFinite
        );
    }

    #[test]
    fn null_times_infinite_is_finite_when_sigma_finite() {
        let p = ProductMeasure::new(MeasureSpec::LebesgueLine, MeasureSpec::DiracAt(q(1)));
        let r = RectUnion::rect(line(), pts(&[0]));
        assert_eq!(
            p.measure(&r).unwrap(),
            (fin(0), FinitenessClass::FiniteMeasure)
        );
    }

    #[test]
    fn triple_products() {
        let (l, d) = (MeasureSpec::LebesgueLine, MeasureSpec::CountingLine);
        let t = TripleRectUnion::new(vec![(closed(0, 1), pts(&[0]), closed(0, 3))]);
        assert_eq!(product3_eval(&l, &d, &l, &t).unwrap(), fin(3));
        let empty = TripleRectUnion::new(vec![(closed(0, 1), pts(&[]), closed(0, 3))]);
        assert_eq!(product3_eval(&l, &d, &l, &empty).unwrap(), fin(0));
        let vertical = TripleRectUnion::new(vec![(pts(&[0]), line(), closed(0, 1))]);
        assert_eq!(
            product3_eval(&l, &d, &l, &vertical).unwrap(),
            ExtNonNeg::Infinity
        );
    }

    #[test]
    fn finite_products() {
        let s = FinUniverse::new(["a", "b"]).unwrap();
        let t = FinUniverse::new(["c"]).unwrap();
        let mu = Tabulated::power_set(&s, vec![fin(2), fin(3)]).unwrap();
        let nu = Tabulated::power_set(&t, vec![fin(5)]).unwrap();
        let p = finite_product_measure(&mu, &nu).unwrap();
        assert_eq!(p.to_string(), "tabulated{(a,c):10, (b,c):15}");

        let inf = Tabulated::power_set(&t, vec![ExtNonNeg::Infinity]).unwrap();
        let zero = Tabulated::power_set(&t, vec![fin(0)]).unwrap();
        assert_eq!(
            finite_product_measure(&inf, &zero).unwrap().weights(),
            &[ExtNonNeg::Infinity]
        );
        let four = Tabulated::power_set(&t, vec![fin(4)]).unwrap();
        assert_eq!(
            finite_product_measure(&zero, &four).unwrap().weights(),
            &[fin(0)]
        );
    }
}
