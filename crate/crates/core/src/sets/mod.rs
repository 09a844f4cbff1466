//! Set calculus for finite grounds, the real line and product rectangles.

mod countable;
mod finset;
mod interval;
mod realset;
mod rect;

use std::fmt;

pub use countable::{CountablePart, Progression, POINT_LIMIT, RESIDUE_LIMIT};
pub use finset::{FinSet, FinUniverse, MAX_GROUND};
pub use interval::{Cut, Interval, IntervalUnion, Side};
pub use realset::{Cardinality, RealSet};
pub use rect::{RectUnion, TripleRectUnion};

pub(crate) use finset::same_universe;
pub(crate) use rect::venn;

use crate::error::{Error, Result};

/// Boolean operations on one kind of set. Mixing universes is an error.
pub trait SetOps: Clone + fmt::Debug + fmt::Display + PartialEq + Sized {
    fn union(&self, other: &Self) -> Result<Self>;
    fn intersect(&self, other: &Self) -> Result<Self>;
    fn difference(&self, other: &Self) -> Result<Self>;
    fn is_empty(&self) -> bool;

    fn is_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }
}

/// A set in one of the two ground universes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Set {
    Finite(FinSet),
    Real(RealSet),
}

impl Set {
    pub fn as_finite(&self) -> Option<&FinSet> {
        match self {
            Set::Finite(s) => Some(s),
            Set::Real(_) => None,
        }
    }

    pub fn as_real(&self) -> Option<&RealSet> {
        match self {
            Set::Real(s) => Some(s),
            Set::Finite(_) => None,
        }
    }

    fn zip<T>(
        &self,
        other: &Self,
        fin: impl FnOnce(&FinSet, &FinSet) -> Result<T>,
        real: impl FnOnce(&RealSet, &RealSet) -> Result<T>,
    ) -> Result<T> {
        match (self, other) {
            (Set::Finite(a), Set::Finite(b)) => fin(a, b),
            (Set::Real(a), Set::Real(b)) => real(a, b),
            _ => Err(Error::UniverseMismatch(
                "finite-ground set combined with a real-line set".into(),
            )),
        }
    }
}

impl From<FinSet> for Set {
    fn from(s: FinSet) -> Self {
        Set::Finite(s)
    }
}

impl From<RealSet> for Set {
    fn from(s: RealSet) -> Self {
        Set::Real(s)
    }
}

impl SetOps for Set {
    fn union(&self, other: &Self) -> Result<Self> {
        self.zip(
            other,
            |a, b| a.union(b).map(Set::Finite),
            |a, b| a.union(b).map(Set::Real),
        )
    }

    fn intersect(&self, other: &Self) -> Result<Self> {
        self.zip(
            other,
            |a, b| a.intersect(b).map(Set::Finite),
            |a, b| a.intersect(b).map(Set::Real),
        )
    }

    fn difference(&self, other: &Self) -> Result<Self> {
        self.zip(
            other,
            |a, b| a.difference(b).map(Set::Finite),
            |a, b| a.difference(b).map(Set::Real),
        )
    }

    fn is_empty(&self) -> bool {
        match self {
            Set::Finite(s) => s.is_empty(),
            Set::Real(s) => s.is_empty(),
        }
    }
}

impl fmt::Display for Set {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Set::Finite(s) => fmt::Display::fmt(s, f),
            Set::Real(s) => fmt::Display::fmt(s, f),
        }
    }
}
