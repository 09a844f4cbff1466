//! Brute-force reference computations on small finite spaces.
//!
//! Nothing here calls into the σ-ring engine, the measures or the product
//! code: sets are raw bitmasks, values use their own extended arithmetic, and
//! σ-finiteness is decided by searching covers rather than by rules.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numerics::{ExtNonNeg, Rational};

/// Largest ground the closure accepts.
pub const ORACLE_MAX_GROUND: usize = 16;

/// `[0, ∞]` with `∞ · 0 = 0`, kept separate from the library type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Naive {
    Fin(BigRational),
    Inf,
}

impl Naive {
    pub fn int(n: i64) -> Self {
        Naive::Fin(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Naive::int(0)
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Naive::Inf)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Naive::Fin(x) if x.is_zero())
    }

    pub fn plus(&self, other: &Naive) -> Naive {
        match (self, other) {
            (Naive::Fin(a), Naive::Fin(b)) => Naive::Fin(a + b),
            _ => Naive::Inf,
        }
    }

    pub fn times(&self, other: &Naive) -> Naive {
        if self.is_zero() || other.is_zero() {
            return Naive::zero();
        }
        match (self, other) {
            (Naive::Fin(a), Naive::Fin(b)) => Naive::Fin(a * b),
            _ => Naive::Inf,
        }
    }

    pub fn to_ext(&self) -> ExtNonNeg {
        match self {
            Naive::Fin(x) => {
                ExtNonNeg::finite(Rational::from_bigints(x.numer().clone(), x.denom().clone()))
            }
            Naive::Inf => ExtNonNeg::Infinity,
        }
    }

    pub fn from_ext(x: &ExtNonNeg) -> Naive {
        match x.finite_value() {
            Some(r) => Naive::Fin(BigRational::new(r.numer().clone(), r.denom().clone())),
            None => Naive::Inf,
        }
    }
}

/// Closure of `family` under pairwise union and difference, iterated over all
/// pairs until nothing new appears.
pub fn oracle_sigma_closure(ground: usize, family: &[u64], limit: usize) -> Result<Vec<u64>> {
    if ground > ORACLE_MAX_GROUND {
        return Err(Error::SizeLimit {
            limit: ORACLE_MAX_GROUND,
        });
    }
    let mask = (1u64 << ground) - 1;
    let mut sets: BTreeSet<u64> = BTreeSet::new();
    sets.insert(0);
    for &f in family {
        sets.insert(f & mask);
    }
    loop {
        let snapshot: Vec<u64> = sets.iter().copied().collect();
        let before = sets.len();
        for &a in &snapshot {
            for &b in &snapshot {
                sets.insert(a | b);
                sets.insert(a & !b);
            }
        }
        if sets.len() > limit {
            return Err(Error::SizeLimit { limit });
        }
        if sets.len() == before {
            return Ok(snapshot);
        }
    }
}

/// A measure on a finite ground given by atoms (disjoint bitmasks) and weights.
#[derive(Clone, Debug)]
pub struct NaiveMeasure {
    pub ground: usize,
    pub atoms: Vec<(u64, Naive)>,
}

impl NaiveMeasure {
    /// The power set with one weight per point.
    pub fn points(weights: &[Naive]) -> Self {
        NaiveMeasure {
            ground: weights.len(),
            atoms: weights
                .iter()
                .enumerate()
                .map(|(i, w)| (1u64 << i, w.clone()))
                .collect(),
        }
    }

    fn measurable(&self, s: u64) -> bool {
        let covered = self.atoms.iter().fold(0, |acc, (a, _)| acc | a);
        s & !covered == 0 && self.atoms.iter().all(|(a, _)| s & a == 0 || s & a == *a)
    }

    fn finite_sets(&self) -> Vec<u64> {
        let finite: Vec<u64> = self
            .atoms
            .iter()
            .filter(|(_, w)| !w.is_inf())
            .map(|(a, _)| *a)
            .collect();
        (0u64..1 << finite.len())
            .map(|pick| {
                (0..finite.len())
                    .filter(|i| pick >> i & 1 == 1)
                    .fold(0, |acc, i| acc | finite[i])
            })
            .collect()
    }
}

/// Bitmask of the rectangle `a × b` on the ground `n × m`, point `(i, j)` at `i * m + j`.
pub fn naive_rect(a: u64, b: u64, m: usize) -> u64 {
    let mut out = 0u64;
    for i in 0..64 {
        if a >> i & 1 == 1 {
            out |= b << (i * m);
        }
    }
    out
}

/// Whether `subset` is a union of rectangles `A × B` with `μ(A), ν(B) < ∞`.
pub fn oracle_is_sigma_finite(mu: &NaiveMeasure, nu: &NaiveMeasure, subset: u64) -> bool {
    let mut covered = 0u64;
    for a in mu.finite_sets() {
        for b in nu.finite_sets() {
            let r = naive_rect(a, b, nu.ground);
            if r & !subset == 0 {
                covered |= r;
            }
        }
    }
    covered == subset
}

/// The product measure of `subset` of the product ground, straight from the
/// definition: the sum of atom products if `subset` is covered by finite
/// rectangles, else `∞`.
pub fn oracle_product_eval(mu: &NaiveMeasure, nu: &NaiveMeasure, subset: u64) -> Result<Naive> {
    if mu.ground * nu.ground > 16 {
        return Err(Error::SizeLimit { limit: 16 });
    }
    let mut product_atoms = Vec::new();
    for (a, wa) in &mu.atoms {
        for (b, wb) in &nu.atoms {
            product_atoms.push((naive_rect(*a, *b, nu.ground), wa.times(wb)));
        }
    }
    let measurable = NaiveMeasure {
        ground: mu.ground * nu.ground,
        atoms: product_atoms.clone(),
    };
    if !measurable.measurable(subset) {
        return Err(Error::NotMeasurable(format!(
            "{subset:#b} is not a union of product atoms"
        )));
    }
    if !oracle_is_sigma_finite(mu, nu, subset) {
        return Ok(Naive::Inf);
    }
    Ok(product_atoms
        .iter()
        .filter(|(r, _)| r & subset == *r)
        .fold(Naive::zero(), |acc, (_, w)| acc.plus(w)))
}

/// `(∫ f d(μ⊗ν), ∫∫ f dν dμ, ∫∫ f dμ dν)` on the power sets of `n × m` points,
/// with `grid[i][j] = f(i, j) ≥ 0`.
pub fn oracle_fubini(
    grid: &[Vec<BigRational>],
    mu: &[Naive],
    nu: &[Naive],
) -> Result<(Naive, Naive, Naive)> {
    Ok(FubiniOracle::new(mu, nu)?.eval(grid))
}

/// [`oracle_fubini`] with the product weights of single cells computed once.
pub struct FubiniOracle {
    mu: Vec<Naive>,
    nu: Vec<Naive>,
    cells: Vec<Naive>,
}

impl FubiniOracle {
    pub fn new(mu: &[Naive], nu: &[Naive]) -> Result<Self> {
        let (n, m) = (mu.len(), nu.len());
        if n > 4 || m > 4 {
            return Err(Error::SizeLimit { limit: 4 });
        }
        let pm = NaiveMeasure::points(mu);
        let pn = NaiveMeasure::points(nu);
        let cells = (0..n * m)
            .map(|k| oracle_product_eval(&pm, &pn, 1u64 << k))
            .collect::<Result<_>>()?;
        Ok(FubiniOracle {
            mu: mu.to_vec(),
            nu: nu.to_vec(),
            cells,
        })
    }

    pub fn eval(&self, grid: &[Vec<BigRational>]) -> (Naive, Naive, Naive) {
        let (n, m) = (self.mu.len(), self.nu.len());
        let f = |i: usize, j: usize| Naive::Fin(grid[i][j].clone());

        let mut product = Naive::zero();
        for i in 0..n {
            for j in 0..m {
                product = product.plus(&f(i, j).times(&self.cells[i * m + j]));
            }
        }

        let mut sv = Naive::zero();
        for i in 0..n {
            let mut inner = Naive::zero();
            for j in 0..m {
                inner = inner.plus(&f(i, j).times(&self.nu[j]));
            }
            sv = sv.plus(&self.mu[i].times(&inner));
        }

        let mut ts = Naive::zero();
        for j in 0..m {
            let mut inner = Naive::zero();
            for i in 0..n {
                inner = inner.plus(&f(i, j).times(&self.mu[i]));
            }
            ts = ts.plus(&self.nu[j].times(&inner));
        }
        (product, sv, ts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_examples() {
        assert_eq!(oracle_sigma_closure(3, &[], 1 << 16).unwrap(), vec![0]);
        assert_eq!(
            oracle_sigma_closure(3, &[0b001, 0b011], 1 << 16).unwrap(),
            vec![0, 1, 2, 3]
        );
        let power: Vec<u64> = (0..8).collect();
        assert_eq!(oracle_sigma_closure(3, &power, 1 << 16).unwrap(), power);
    }

    #[test]
    fn product_eval_examples() {
        let one = NaiveMeasure::points(&[Naive::int(1)]);
        assert_eq!(oracle_product_eval(&one, &one, 0).unwrap(), Naive::zero());
        assert_eq!(oracle_product_eval(&one, &one, 1).unwrap(), Naive::int(1));
        let inf = NaiveMeasure::points(&[Naive::Inf]);
        let zero = NaiveMeasure::points(&[Naive::zero()]);
        assert_eq!(oracle_product_eval(&inf, &zero, 1).unwrap(), Naive::Inf);
    }

    #[test]
    fn fubini_examples() {
        let ones = vec![vec![BigRational::from_integer(1.into()); 2]; 2];
        let w = [Naive::int(1), Naive::int(1)];
        let four = Naive::int(4);
        assert_eq!(
            oracle_fubini(&ones, &w, &w).unwrap(),
            (four.clone(), four.clone(), four)
        );

        let zeros = vec![vec![BigRational::zero(); 2]; 2];
        let z = Naive::zero();
        assert_eq!(
            oracle_fubini(&zeros, &w, &w).unwrap(),
            (z.clone(), z.clone(), z)
        );

        // f = 1 on the row of an infinite atom
        let mut on_inf = vec![vec![BigRational::zero(); 2]; 2];
        on_inf[0][0] = BigRational::from_integer(1.into());
        let mu = [Naive::Inf, Naive::int(1)];
        let (p, sv, ts) = oracle_fubini(&on_inf, &mu, &w).unwrap();
        assert!(p.is_inf() && sv.is_inf() && ts.is_inf());

        // the same row met by a null column: the iterated sums vanish
        let mut row = vec![vec![BigRational::zero(); 2]; 2];
        row[0][1] = BigRational::from_integer(1.into());
        let nu = [Naive::int(1), Naive::zero()];
        let (p, sv, ts) = oracle_fubini(&row, &mu, &nu).unwrap();
        assert_eq!(p, Naive::Inf);
        assert_eq!(sv, Naive::zero());
        assert_eq!(ts, Naive::zero());
    }
}
