//! Representable subsets of the real line.
//!
//! A [`RealSet`] is `(I \ E) ∪ C` where `I` is a finite union of
//! nondegenerate intervals, `E ⊆ I` and `C ∩ I = ∅` are countable. The
//! normal form is determined by the point set alone: intervals touching at
//! an open-open contact are fused (the contact point goes to `E` unless it is
//! in `C`), an endpoint is closed exactly when it belongs to the set, and
//! single points live in `C`.

use std::fmt;

use crate::error::Result;
use crate::numerics::{ExtNonNeg, Rational};
use crate::sets::countable::{CountablePart, Progression};
use crate::sets::interval::{Cut, Interval, IntervalUnion, Side};
use crate::sets::SetOps;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cardinality {
    Empty,
    Finite(usize),
    CountablyInfinite,
    Uncountable,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RealSet {
    intervals: IntervalUnion,
    excluded: CountablePart,
    included: CountablePart,
}

#[derive(Clone, Copy)]
enum Op {
    Union,
    Intersect,
    Difference,
}

impl RealSet {
    pub fn empty() -> Self {
        RealSet::default()
    }

    pub fn real_line() -> Self {
        RealSet::from_interval(Interval::real_line())
    }

    pub fn from_interval(iv: Interval) -> Self {
        if let Some(a) = iv.as_point() {
            return RealSet::points([a.clone()]);
        }
        RealSet {
            intervals: IntervalUnion::from_sorted_unchecked(vec![iv]),
            ..RealSet::default()
        }
    }

    /// `[a, b]`; empty when `a > b`.
    pub fn closed(a: Rational, b: Rational) -> Self {
        Interval::closed(a, b)
            .map(RealSet::from_interval)
            .unwrap_or_default()
    }

    pub fn points(points: impl IntoIterator<Item = Rational>) -> Self {
        RealSet::from_countable(CountablePart::from_points(points))
    }

    pub fn progression(p: Progression) -> Self {
        RealSet::from_countable(CountablePart::from_progression(p))
    }

    pub fn from_countable(c: CountablePart) -> Self {
        RealSet {
            included: c,
            ..RealSet::default()
        }
    }

    pub fn intervals(&self) -> &IntervalUnion {
        &self.intervals
    }

    pub fn excluded(&self) -> &CountablePart {
        &self.excluded
    }

    pub fn included(&self) -> &CountablePart {
        &self.included
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if self.intervals.contains(x) {
            !self.excluded.contains(x)
        } else {
            self.included.contains(x)
        }
    }

    pub fn is_countable(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn cardinality(&self) -> Cardinality {
        if !self.intervals.is_empty() {
            Cardinality::Uncountable
        } else if !self.included.is_finite() {
            Cardinality::CountablyInfinite
        } else if self.included.points().is_empty() {
            Cardinality::Empty
        } else {
            Cardinality::Finite(self.included.points().len())
        }
    }

    /// Total interval length; countable corrections are null.
    pub fn lebesgue_length(&self) -> ExtNonNeg {
        self.intervals.length()
    }

    /// `self ∩ q` for a countable `q`.
    fn countable_trace(&self, q: &CountablePart) -> Result<CountablePart> {
        let inside = q
            .intersect_intervals(&self.intervals)?
            .difference(&self.excluded)?;
        inside.union(&q.intersect(&self.included)?)
    }

    fn combine(&self, other: &Self, op: Op) -> Result<Self> {
        let intervals = match op {
            Op::Union => self.intervals.union(&other.intervals),
            Op::Intersect => self.intervals.intersect(&other.intervals),
            Op::Difference => self.intervals.difference(&other.intervals),
        };
        // away from the corrections, the result agrees with the interval skeleton
        let corrections = self
            .excluded
            .union(&self.included)?
            .union(&other.excluded)?
            .union(&other.included)?;
        let mine = self.countable_trace(&corrections)?;
        let theirs = other.countable_trace(&corrections)?;
        let members = match op {
            Op::Union => mine.union(&theirs)?,
            Op::Intersect => mine.intersect(&theirs)?,
            Op::Difference => mine.difference(&theirs)?,
        };
        let excluded = corrections
            .intersect_intervals(&intervals)?
            .difference(&members)?;
        let included = members.minus_intervals(&intervals)?;
        normalize(intervals, excluded, included)
    }

    /// `bounds \ self`.
    pub fn complement_within(&self, bounds: &RealSet) -> Result<Self> {
        bounds.combine(self, Op::Difference)
    }
}

fn normalize(
    intervals: IntervalUnion,
    mut excluded: CountablePart,
    mut included: CountablePart,
) -> Result<RealSet> {
    let mut parts: Vec<Interval> = Vec::with_capacity(intervals.parts().len());
    for iv in intervals.parts() {
        match iv.as_point() {
            Some(a) => {
                let single = CountablePart::from_points([a.clone()]);
                if excluded.contains(a) {
                    excluded = excluded.difference(&single)?;
                } else {
                    included = included.union(&single)?;
                }
            }
            None => parts.push(iv.clone()),
        }
    }

    let mut fused: Vec<Interval> = Vec::with_capacity(parts.len());
    for iv in parts {
        if let Some(last) = fused.last_mut() {
            if let (Cut::At(b, Side::Below), Cut::At(c, Side::Above)) = (last.hi(), iv.lo()) {
                if b == c {
                    let single = CountablePart::from_points([b.clone()]);
                    if included.contains(b) {
                        included = included.difference(&single)?;
                    } else {
                        excluded = excluded.union(&single)?;
                    }
                    last.set_hi(iv.hi().clone());
                    continue;
                }
            }
        }
        fused.push(iv);
    }

    for iv in &mut fused {
        if let Cut::At(a, side) = iv.lo().clone() {
            let single = CountablePart::from_points([a.clone()]);
            match side {
                Side::Below if excluded.contains(&a) => {
                    excluded = excluded.difference(&single)?;
                    iv.set_lo(Cut::At(a, Side::Above));
                }
                Side::Above if included.contains(&a) => {
                    included = included.difference(&single)?;
                    iv.set_lo(Cut::At(a, Side::Below));
                }
                _ => {}
            }
        }
        if let Cut::At(b, side) = iv.hi().clone() {
            let single = CountablePart::from_points([b.clone()]);
            match side {
                Side::Above if excluded.contains(&b) => {
                    excluded = excluded.difference(&single)?;
                    iv.set_hi(Cut::At(b, Side::Below));
                }
                Side::Below if included.contains(&b) => {
                    included = included.difference(&single)?;
                    iv.set_hi(Cut::At(b, Side::Above));
                }
                _ => {}
            }
        }
    }

    Ok(RealSet {
        intervals: IntervalUnion::from_sorted_unchecked(fused),
        excluded,
        included,
    })
}

impl SetOps for RealSet {
    fn union(&self, other: &Self) -> Result<Self> {
        self.combine(other, Op::Union)
    }

    fn intersect(&self, other: &Self) -> Result<Self> {
        self.combine(other, Op::Intersect)
    }

    fn difference(&self, other: &Self) -> Result<Self> {
        self.combine(other, Op::Difference)
    }

    fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.included.is_empty()
    }
}

struct CountableDisplay<'a>(&'a CountablePart);

impl CountableDisplay<'_> {
    fn items(&self) -> usize {
        usize::from(!self.0.points().is_empty()) + self.0.progressions().len()
    }
}

impl fmt::Display for CountableDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if !std::mem::take(&mut first) {
                f.write_str(" | ")?;
            }
            Ok(())
        };
        if !self.0.points().is_empty() {
            sep(f)?;
            f.write_str("{")?;
            for (i, p) in self.0.points().iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str("}")?;
        }
        for p in self.0.progressions() {
            sep(f)?;
            write!(f, "prog({}, {})", p.base(), p.step())?;
        }
        Ok(())
    }
}

/// Renders in the CLI set syntax; `|` and `\` associate to the left.
impl fmt::Display for RealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        let mut wrote = false;
        for (i, iv) in self.intervals.parts().iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{iv}")?;
            wrote = true;
        }
        if !self.excluded.is_empty() {
            let ex = CountableDisplay(&self.excluded);
            if ex.items() > 1 {
                write!(f, " \\ ({ex})")?;
            } else {
                write!(f, " \\ {ex}")?;
            }
        }
        if !self.included.is_empty() {
            if wrote {
                f.write_str(" | ")?;
            }
            write!(f, "{}", CountableDisplay(&self.included))?;
        }
        Ok(())
    }
}
