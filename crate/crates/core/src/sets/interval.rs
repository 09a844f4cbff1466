//! Finite unions of real intervals with rational or unbounded endpoints.
//!
//! Endpoints are modelled as *cuts*: every rational `x` splits the line into
//! `x⁻` (just below `x`) and `x⁺` (just above). An interval is the half-open
//! cut range `[lo, hi)`, so `[a, b]` is `(a⁻, b⁺)` and `(a, b)` is `(a⁺, b⁻)`.

use std::fmt;

use crate::numerics::{ExtNonNeg, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Below,
    Above,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cut {
    NegInf,
    At(Rational, Side),
    PosInf,
}

impl Cut {
    fn value(&self) -> Option<&Rational> {
        match self {
            Cut::At(v, _) => Some(v),
            _ => None,
        }
    }
}

/// A nonempty interval; possibly a single point `[a, a]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    lo: Cut,
    hi: Cut,
}

impl Interval {
    /// `lo` must be `NegInf` or `At(..)`, `hi` must be `PosInf` or `At(..)`.
    /// Returns `None` when the range is empty.
    pub fn from_cuts(lo: Cut, hi: Cut) -> Option<Self> {
        debug_assert!(lo != Cut::PosInf && hi != Cut::NegInf);
        (lo < hi).then_some(Interval { lo, hi })
    }

    /// `lo`/`hi` of `None` mean unbounded; the flags say whether the endpoint is included.
    pub fn new(
        lo: Option<Rational>,
        lo_closed: bool,
        hi: Option<Rational>,
        hi_closed: bool,
    ) -> Option<Self> {
        let lo = match lo {
            None => Cut::NegInf,
            Some(v) => Cut::At(v, if lo_closed { Side::Below } else { Side::Above }),
        };
        let hi = match hi {
            None => Cut::PosInf,
            Some(v) => Cut::At(v, if hi_closed { Side::Above } else { Side::Below }),
        };
        Self::from_cuts(lo, hi)
    }

    pub fn closed(a: Rational, b: Rational) -> Option<Self> {
        Self::new(Some(a), true, Some(b), true)
    }

    pub fn open(a: Rational, b: Rational) -> Option<Self> {
        Self::new(Some(a), false, Some(b), false)
    }

    pub fn real_line() -> Self {
        Interval {
            lo: Cut::NegInf,
            hi: Cut::PosInf,
        }
    }

    pub fn lo(&self) -> &Cut {
        &self.lo
    }

    pub fn hi(&self) -> &Cut {
        &self.hi
    }

    pub fn lower_value(&self) -> Option<&Rational> {
        self.lo.value()
    }

    pub fn upper_value(&self) -> Option<&Rational> {
        self.hi.value()
    }

    pub fn lower_closed(&self) -> bool {
        matches!(self.lo, Cut::At(_, Side::Below))
    }

    pub fn upper_closed(&self) -> bool {
        matches!(self.hi, Cut::At(_, Side::Above))
    }

    pub fn is_bounded_above(&self) -> bool {
        self.hi != Cut::PosInf
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo <= Cut::At(x.clone(), Side::Below) && Cut::At(x.clone(), Side::Above) <= self.hi
    }

    /// `Some(a)` when the interval is exactly `[a, a]`.
    pub fn as_point(&self) -> Option<&Rational> {
        match (&self.lo, &self.hi) {
            (Cut::At(a, Side::Below), Cut::At(b, Side::Above)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn length(&self) -> ExtNonNeg {
        match (&self.lo, &self.hi) {
            (Cut::At(a, _), Cut::At(b, _)) => ExtNonNeg::finite(b - a),
            _ => ExtNonNeg::Infinity,
        }
    }

    pub(crate) fn set_lo(&mut self, lo: Cut) {
        self.lo = lo;
    }

    pub(crate) fn set_hi(&mut self, hi: Cut) {
        self.hi = hi;
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            Cut::NegInf => f.write_str("(-inf")?,
            Cut::At(v, Side::Below) => write!(f, "[{v}")?,
            Cut::At(v, Side::Above) => write!(f, "({v}")?,
            Cut::PosInf => unreachable!("lower cut at +inf"),
        }
        f.write_str(",")?;
        match &self.hi {
            Cut::PosInf => f.write_str("inf)"),
            Cut::At(v, Side::Above) => write!(f, "{v}]"),
            Cut::At(v, Side::Below) => write!(f, "{v})"),
            Cut::NegInf => unreachable!("upper cut at -inf"),
        }
    }
}

/// Sorted, pairwise disjoint intervals; intervals that overlap or share a
/// closed endpoint are merged. Open-open contacts such as `(0,1)`, `(1,2)`
/// are kept apart here and resolved by the real-set normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalUnion {
    parts: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { parts: Vec::new() }
    }

    pub fn from_intervals(mut parts: Vec<Interval>) -> Self {
        parts.sort();
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for iv in parts {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => merged.push(iv),
            }
        }
        IntervalUnion { parts: merged }
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<Interval>) -> Self {
        IntervalUnion { parts }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.parts.iter().any(|iv| iv.contains(x))
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::with_capacity(self.parts.len() + 1);
        let mut cursor = Cut::NegInf;
        for iv in &self.parts {
            if cursor < iv.lo {
                out.push(Interval {
                    lo: cursor.clone(),
                    hi: iv.lo.clone(),
                });
            }
            cursor = iv.hi.clone();
        }
        if cursor != Cut::PosInf {
            out.push(Interval {
                lo: cursor,
                hi: Cut::PosInf,
            });
        }
        IntervalUnion { parts: out }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut all = self.parts.clone();
        all.extend(other.parts.iter().cloned());
        Self::from_intervals(all)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersect(&other.complement())
    }

    pub fn length(&self) -> ExtNonNeg {
        self.parts.iter().map(Interval::length).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::integer(n)
    }

    #[test]
    fn closed_contact_merges_open_contact_does_not() {
        let u = IntervalUnion::from_intervals(vec![
            Interval::closed(q(0), q(1)).unwrap(),
            Interval::open(q(1), q(2)).unwrap(),
        ]);
        assert_eq!(u.parts().len(), 1);
        assert_eq!(u.parts()[0].to_string(), "[0,2)");

        let v = IntervalUnion::from_intervals(vec![
            Interval::open(q(0), q(1)).unwrap(),
            Interval::open(q(1), q(2)).unwrap(),
        ]);
        assert_eq!(v.parts().len(), 2);
    }

    #[test]
    fn intersection_can_degenerate_to_a_point() {
        let a = IntervalUnion::from_intervals(vec![Interval::closed(q(0), q(1)).unwrap()]);
        let b = IntervalUnion::from_intervals(vec![Interval::closed(q(1), q(2)).unwrap()]);
        let c = a.intersect(&b);
        assert_eq!(c.parts().len(), 1);
        assert_eq!(c.parts()[0].as_point(), Some(&q(1)));
    }

    #[test]
    fn complement_of_line_is_empty() {
        let line = IntervalUnion::from_intervals(vec![Interval::real_line()]);
        assert!(line.complement().is_empty());
        assert_eq!(IntervalUnion::empty().complement(), line);
    }

    #[test]
    fn empty_ranges_are_rejected() {
        assert!(Interval::open(q(1), q(1)).is_none());
        assert!(Interval::closed(q(2), q(1)).is_none());
        assert!(Interval::closed(q(1), q(1)).is_some());
    }

    #[test]
    fn lengths() {
        let u = IntervalUnion::from_intervals(vec![
            Interval::closed(q(0), q(1)).unwrap(),
            Interval::open(q(3), q(5)).unwrap(),
        ]);
        assert_eq!(u.length(), ExtNonNeg::integer(3));
        let ray = IntervalUnion::from_intervals(vec![
            Interval::new(Some(q(0)), true, None, false).unwrap()
        ]);
        assert_eq!(ray.length(), ExtNonNeg::Infinity);
        assert_eq!(ray.parts()[0].to_string(), "[0,inf)");
    }
}
