//! Explicit σ-rings over finite grounds.
//!
//! On a finite ground a σ-ring is determined by its atoms (the minimal
//! nonempty members); the members are exactly the unions of atoms. A family
//! generates the ring whose atoms are the nonempty cells of the family's Venn
//! diagram inside the union of the family.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sets::{same_universe, FinSet, FinUniverse, SetOps};

pub const DEFAULT_SIZE_LIMIT: usize = 1 << 16;

/// Member bound for closures: `SIGMA_PRODUCT_SIZE_LIMIT` if set and valid, else the default.
pub fn size_limit() -> usize {
    std::env::var("SIGMA_PRODUCT_SIZE_LIMIT")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_LIMIT)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaRingFin {
    universe: Arc<FinUniverse>,
    atoms: Vec<FinSet>,
    members: Vec<FinSet>,
}

fn check_family(universe: &Arc<FinUniverse>, family: &[FinSet]) -> Result<()> {
    match family
        .iter()
        .find(|s| !same_universe(s.universe(), universe))
    {
        Some(s) => Err(Error::UniverseMismatch(format!(
            "{s} is not over the given ground"
        ))),
        None => Ok(()),
    }
}

fn venn_bits(family: impl IntoIterator<Item = u128>) -> Vec<u128> {
    let mut cells: Vec<u128> = Vec::new();
    for f in family {
        if f == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(cells.len() * 2 + 1);
        let mut rest = f;
        for c in cells {
            let inside = c & f;
            let outside = c & !f;
            if inside != 0 {
                next.push(inside);
            }
            if outside != 0 {
                next.push(outside);
            }
            rest &= !c;
        }
        if rest != 0 {
            next.push(rest);
        }
        cells = next;
    }
    cells.sort_unstable();
    cells
}

impl SigmaRingFin {
    /// Builds the ring with the given pairwise disjoint nonempty atoms.
    pub(crate) fn from_atom_bits(
        universe: &Arc<FinUniverse>,
        mut atoms: Vec<u128>,
        limit: usize,
    ) -> Result<Self> {
        atoms.sort_unstable();
        let k = atoms.len();
        if k >= usize::BITS as usize || (1usize << k) > limit {
            return Err(Error::SizeLimit { limit });
        }
        let mut bits = Vec::with_capacity(1 << k);
        bits.push(0u128);
        for &a in &atoms {
            for i in 0..bits.len() {
                bits.push(bits[i] | a);
            }
        }
        bits.sort_unstable();
        let mk = |b: u128| FinSet::new(universe, b).expect("atoms lie in the ground");
        Ok(SigmaRingFin {
            universe: universe.clone(),
            atoms: atoms.into_iter().map(mk).collect(),
            members: bits.into_iter().map(mk).collect(),
        })
    }

    pub fn universe(&self) -> &Arc<FinUniverse> {
        &self.universe
    }

    /// Minimal nonempty members, sorted by bitmask.
    pub fn atoms(&self) -> &[FinSet] {
        &self.atoms
    }

    /// All members, sorted by bitmask; the first is always `∅`.
    pub fn members(&self) -> &[FinSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Union of all members.
    pub fn top(&self) -> FinSet {
        let bits = self.atoms.iter().fold(0, |acc, a| acc | a.bits());
        FinSet::new(&self.universe, bits).expect("atoms lie in the ground")
    }

    pub fn is_sigma_algebra(&self) -> bool {
        self.top().bits() == self.universe.full_bits()
    }

    pub fn contains(&self, s: &FinSet) -> bool {
        same_universe(s.universe(), &self.universe) && self.members.binary_search(s).is_ok()
    }

    /// The atoms a member decomposes into; `None` for non-members.
    pub fn decompose(&self, s: &FinSet) -> Option<Vec<usize>> {
        if !self.contains(s) {
            return None;
        }
        Some(
            self.atoms
                .iter()
                .enumerate()
                .filter(|(_, a)| a.is_subset_of(s))
                .map(|(i, _)| i)
                .collect(),
        )
    }

    /// `{ A ∩ s : A ∈ self }`.
    pub fn restrict(&self, s: &FinSet) -> Result<Self> {
        if !same_universe(s.universe(), &self.universe) {
            return Err(Error::UniverseMismatch(
                "restriction to a set over another ground".into(),
            ));
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| a.bits() & s.bits())
            .filter(|&b| b != 0)
            .collect();
        Self::from_atom_bits(&self.universe, atoms, usize::MAX)
    }
}

pub fn generate_sigma_ring(universe: &Arc<FinUniverse>, family: &[FinSet]) -> Result<SigmaRingFin> {
    generate_sigma_ring_with_limit(universe, family, size_limit())
}

pub fn generate_sigma_ring_with_limit(
    universe: &Arc<FinUniverse>,
    family: &[FinSet],
    limit: usize,
) -> Result<SigmaRingFin> {
    check_family(universe, family)?;
    let atoms = venn_bits(family.iter().map(FinSet::bits));
    SigmaRingFin::from_atom_bits(universe, atoms, limit)
}

/// `σ(family ∪ {ground})`.
pub fn generate_sigma_algebra(
    universe: &Arc<FinUniverse>,
    family: &[FinSet],
) -> Result<SigmaRingFin> {
    check_family(universe, family)?;
    let mut with_ground = family.to_vec();
    with_ground.push(FinSet::full(universe));
    generate_sigma_ring(universe, &with_ground)
}

/// `{ A ∩ s : A ∈ family }`, sorted, duplicates removed.
pub fn restrict_family(family: &[FinSet], s: &FinSet) -> Result<Vec<FinSet>> {
    let mut out = family
        .iter()
        .map(|a| a.intersect(s))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// `σ({A × B : A ∈ r1, B ∈ r2})` over the product ground.
pub fn product_sigma_ring(r1: &SigmaRingFin, r2: &SigmaRingFin) -> Result<SigmaRingFin> {
    product_sigma_ring_with_limit(r1, r2, size_limit())
}

pub fn product_sigma_ring_with_limit(
    r1: &SigmaRingFin,
    r2: &SigmaRingFin,
    limit: usize,
) -> Result<SigmaRingFin> {
    let ground = FinUniverse::product(&r1.universe, &r2.universe)?;
    let mut atoms = Vec::with_capacity(r1.atoms.len() * r2.atoms.len());
    for a in &r1.atoms {
        for b in &r2.atoms {
            atoms.push(FinSet::rect(&ground, a, b)?.bits());
        }
    }
    SigmaRingFin::from_atom_bits(&ground, atoms, limit)
}

/// Whether every member of `outer` lying inside some member of `inner` is
/// itself in `inner` (and `inner ⊆ outer`).
pub fn has_simple_extension_property(outer: &SigmaRingFin, inner: &SigmaRingFin) -> bool {
    if !same_universe(&outer.universe, &inner.universe) {
        return false;
    }
    if !inner.members.iter().all(|m| outer.contains(m)) {
        return false;
    }
    // inner is closed under unions, so "inside some member" means "inside its top"
    let top = inner.top();
    outer
        .members
        .iter()
        .filter(|a| a.is_subset_of(&top))
        .all(|a| inner.contains(a))
}

impl fmt::Display for SigmaRingFin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}
