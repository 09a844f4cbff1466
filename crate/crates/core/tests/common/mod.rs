#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;

use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sigma_product::measures::{
    sigma_finite_component, Atomic, Generator, MeasureSpec, Tabulated, WeightRule,
};
use sigma_product::numerics::{ExtNonNeg, Rational};
use sigma_product::oracle::Naive;
use sigma_product::sets::{FinSet, FinUniverse, Interval, Progression, RealSet, SetOps};
use sigma_product::sigma_engine::{generate_sigma_ring, SigmaRingFin};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn fin(n: i64) -> ExtNonNeg {
    ExtNonNeg::integer(n as u64)
}

/// Weight codes: 0, 1, 2 and 3 for ∞.
pub fn weight(code: u8) -> ExtNonNeg {
    match code {
        3 => ExtNonNeg::Infinity,
        c => fin(c as i64),
    }
}

pub fn naive_weight(code: u8) -> Naive {
    match code {
        3 => Naive::Inf,
        c => Naive::int(c as i64),
    }
}

pub fn universe(prefix: &str, n: usize) -> Arc<FinUniverse> {
    FinUniverse::new((0..n).map(|i| format!("{prefix}{i}"))).unwrap()
}

pub fn power_set(u: &Arc<FinUniverse>, codes: &[u8]) -> Tabulated {
    Tabulated::power_set(u, codes.iter().map(|&c| weight(c)).collect()).unwrap()
}

pub fn naive_points(codes: &[u8]) -> Vec<Naive> {
    codes.iter().map(|&c| naive_weight(c)).collect()
}

pub fn to_naive(r: &Rational) -> Naive {
    Naive::Fin(BigRational::new(r.numer().clone(), r.denom().clone()))
}

pub fn bits_of(sets: &[FinSet]) -> Vec<u128> {
    let mut v: Vec<u128> = sets.iter().map(FinSet::bits).collect();
    v.sort_unstable();
    v
}

/// A random family of at most `max_family` subsets of an `n`-point ground.
pub fn random_family(r: &mut StdRng, u: &Arc<FinUniverse>, max_family: usize) -> Vec<FinSet> {
    let n = u.len();
    let k = r.gen_range(0..=max_family);
    (0..k)
        .map(|_| FinSet::new(u, r.gen_range(0..1u128 << n)).unwrap())
        .collect()
}

pub fn random_ring(r: &mut StdRng, u: &Arc<FinUniverse>, max_family: usize) -> SigmaRingFin {
    let fam = random_family(r, u, max_family);
    generate_sigma_ring(u, &fam).unwrap()
}

pub fn random_weight(r: &mut StdRng) -> ExtNonNeg {
    match r.gen_range(0..6) {
        0 => ExtNonNeg::zero(),
        1 => ExtNonNeg::Infinity,
        2 => ExtNonNeg::finite(q(1, 2)),
        c => fin(c as i64 - 2),
    }
}

pub fn random_tabulated(r: &mut StdRng, u: &Arc<FinUniverse>, max_family: usize) -> Tabulated {
    let ring = random_ring(r, u, max_family);
    let w = (0..ring.atoms().len()).map(|_| random_weight(r)).collect();
    Tabulated::new(ring, w).unwrap()
}

/// A random member of the measure's σ-ring.
pub fn random_member(r: &mut StdRng, m: &Tabulated) -> FinSet {
    let ring = m.ring();
    ring.members()[r.gen_range(0..ring.members().len())].clone()
}

pub fn random_real_set(r: &mut StdRng) -> RealSet {
    let a = r.gen_range(-4i64..6);
    match r.gen_range(0..5) {
        0 => RealSet::closed(q(a, 1), q(a + r.gen_range(0..4), 1)),
        1 => RealSet::from_interval(Interval::open(q(a, 2), q(a + 3, 2)).unwrap())
            .difference(&RealSet::points([q(a + 1, 2)]))
            .unwrap(),
        2 => RealSet::points((0..r.gen_range(0..4)).map(|_| q(r.gen_range(-6..8), 2))),
        3 => RealSet::progression(Progression::new(q(a, 1), q(r.gen_range(1..3), 1)).unwrap()),
        _ => RealSet::closed(q(a, 1), q(a + 2, 1))
            .union(&RealSet::points([q(9, 1)]))
            .unwrap(),
    }
}

pub fn random_real_measure(r: &mut StdRng) -> MeasureSpec {
    match r.gen_range(0..5) {
        0 => MeasureSpec::LebesgueLine,
        1 => MeasureSpec::CountingLine,
        2 => MeasureSpec::DiracAt(q(r.gen_range(-2..4), 2)),
        3 => sigma_finite_component(&MeasureSpec::CountingLine).unwrap(),
        _ => MeasureSpec::CountableAtomic(
            Atomic::new(vec![
                Generator::Point {
                    at: q(1, 2),
                    weight: fin(3),
                },
                Generator::Progression {
                    prog: Progression::new(q(0, 1), q(1, 1)).unwrap(),
                    rule: WeightRule::Geometric {
                        first: q(1, 1),
                        ratio: q(1, 3),
                    },
                },
                Generator::Point {
                    at: q(-1, 1),
                    weight: ExtNonNeg::Infinity,
                },
            ])
            .unwrap(),
        ),
    }
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Every `*.spec` under the golden directory, sorted.
pub fn golden_specs() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "spec"))
        .collect();
    v.sort();
    v
}

/// Runs the binary on a spec file; `.json.spec` files use the JSON format.
/// Returns stdout, then stderr, then the exit code line.
pub fn run_binary(spec: &Path) -> String {
    let json = spec.to_string_lossy().ends_with(".json.spec");
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sigma-product"));
    cmd.arg("run").arg(spec);
    if json {
        cmd.args(["--format", "json"]);
    }
    let out = cmd.output().unwrap();
    format!(
        "{}{}exit: {}\n",
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap()
    )
}

pub fn expected_path(spec: &Path) -> PathBuf {
    spec.with_extension("expected")
}
