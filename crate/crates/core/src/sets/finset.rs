//! Subsets of a finite, labelled ground set, stored as bitmasks.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sets::SetOps;

/// Largest ground set a [`FinSet`] can address.
pub const MAX_GROUND: usize = 128;

/// An ordered list of distinct labels. Product grounds remember their factors.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FinUniverse {
    labels: Vec<String>,
    factors: Option<(Arc<FinUniverse>, Arc<FinUniverse>)>,
}

impl FinUniverse {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_GROUND {
            return Err(Error::RepresentationOverflow(format!(
                "finite ground of {} labels exceeds {MAX_GROUND}",
                labels.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::UniverseMismatch(format!("duplicate label `{l}`")));
            }
        }
        Ok(Arc::new(FinUniverse {
            labels,
            factors: None,
        }))
    }

    /// Ground `left × right`; the pair `(i, j)` sits at index `i * right.len() + j`.
    pub fn product(left: &Arc<Self>, right: &Arc<Self>) -> Result<Arc<Self>> {
        let size = left.len() * right.len();
        if size > MAX_GROUND {
            return Err(Error::RepresentationOverflow(format!(
                "product ground of {size} points exceeds {MAX_GROUND}"
            )));
        }
        let mut labels = Vec::with_capacity(size);
        for a in &left.labels {
            for b in &right.labels {
                labels.push(format!("({a},{b})"));
            }
        }
        Ok(Arc::new(FinUniverse {
            labels,
            factors: Some((left.clone(), right.clone())),
        }))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn factors(&self) -> Option<&(Arc<FinUniverse>, Arc<FinUniverse>)> {
        self.factors.as_ref()
    }

    pub fn full_bits(&self) -> u128 {
        if self.labels.len() == MAX_GROUND {
            u128::MAX
        } else {
            (1u128 << self.labels.len()) - 1
        }
    }
}

pub(crate) fn same_universe(a: &Arc<FinUniverse>, b: &Arc<FinUniverse>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A subset of a [`FinUniverse`].
#[derive(Clone)]
pub struct FinSet {
    universe: Arc<FinUniverse>,
    bits: u128,
}

impl FinSet {
    /// Bits outside the ground are rejected.
    pub fn new(universe: &Arc<FinUniverse>, bits: u128) -> Result<Self> {
        if bits & !universe.full_bits() != 0 {
            return Err(Error::UniverseMismatch(
                "bitmask addresses points outside the ground".into(),
            ));
        }
        Ok(FinSet {
            universe: universe.clone(),
            bits,
        })
    }

    pub fn empty(universe: &Arc<FinUniverse>) -> Self {
        FinSet {
            universe: universe.clone(),
            bits: 0,
        }
    }

    pub fn full(universe: &Arc<FinUniverse>) -> Self {
        FinSet {
            universe: universe.clone(),
            bits: universe.full_bits(),
        }
    }

    pub fn singleton(universe: &Arc<FinUniverse>, index: usize) -> Self {
        assert!(index < universe.len(), "index {index} outside ground");
        FinSet {
            universe: universe.clone(),
            bits: 1u128 << index,
        }
    }

    pub fn from_labels<S: AsRef<str>>(universe: &Arc<FinUniverse>, labels: &[S]) -> Result<Self> {
        let mut bits = 0u128;
        for l in labels {
            let l = l.as_ref();
            let i = universe
                .index_of(l)
                .ok_or_else(|| Error::UniverseMismatch(format!("label `{l}` not in ground")))?;
            bits |= 1u128 << i;
        }
        Ok(FinSet {
            universe: universe.clone(),
            bits,
        })
    }

    /// The rectangle `a × b` inside `product`, whose factors must be the universes of `a` and `b`.
    pub fn rect(product: &Arc<FinUniverse>, a: &FinSet, b: &FinSet) -> Result<Self> {
        let (left, right) = product
            .factors()
            .ok_or_else(|| Error::UniverseMismatch("ground is not a product".into()))?;
        if !same_universe(left, &a.universe) || !same_universe(right, &b.universe) {
            return Err(Error::UniverseMismatch(
                "rectangle sides do not match the factors".into(),
            ));
        }
        let width = right.len();
        let mut bits = 0u128;
        for i in a.indices() {
            bits |= b.bits << (i * width);
        }
        Ok(FinSet {
            universe: product.clone(),
            bits,
        })
    }

    pub fn universe(&self) -> &Arc<FinUniverse> {
        &self.universe
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn contains(&self, index: usize) -> bool {
        index < MAX_GROUND && self.bits >> index & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.universe.len()).filter(move |i| bits >> i & 1 == 1)
    }

    pub fn is_subset_of(&self, other: &FinSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersects(&self, other: &FinSet) -> bool {
        self.bits & other.bits != 0
    }

    fn check(&self, other: &FinSet) -> Result<()> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch(
                "finite sets over different grounds".into(),
            ))
        }
    }

    fn with_bits(&self, bits: u128) -> FinSet {
        FinSet {
            universe: self.universe.clone(),
            bits,
        }
    }
}

impl SetOps for FinSet {
    fn union(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_bits(self.bits | other.bits))
    }

    fn intersect(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_bits(self.bits & other.bits))
    }

    fn difference(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_bits(self.bits & !other.bits))
    }

    fn is_empty(&self) -> bool {
        FinSet::is_empty(self)
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && same_universe(&self.universe, &other.universe)
    }
}

impl Eq for FinSet {}

impl Hash for FinSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl PartialOrd for FinSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FinSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits
            .cmp(&other.bits)
            .then_with(|| self.universe.labels.cmp(&other.universe.labels))
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, i) in self.indices().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&self.universe.labels[i])?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
