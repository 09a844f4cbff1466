//! Exact rationals and the nonnegative extended reals `[0, ∞]`.
//!
//! Multiplication follows the measure-theoretic convention `∞ · 0 = 0`.
//! Signed values only ever appear as finite [`Rational`]s; [`ExtNonNeg`]
//! is the carrier of measure values.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(num, den))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, exp: &BigUint) -> Self {
        let mut result = BigRational::one();
        let mut base = self.0.clone();
        let mut e = exp.clone();
        let two = BigUint::from(2u32);
        while !e.is_zero() {
            if e.is_odd() {
                result *= &base;
            }
            e /= &two;
            if !e.is_zero() {
                base = &base * &base;
            }
        }
        Rational(result)
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error returned when a string is not a rational literal (`n`, `-n`, `p/q`).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, s),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n, d),
            None => (body, "1"),
        };
        if !digits(num) || !digits(den) {
            return Err(err());
        }
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        Ok(Rational::from_bigints(num * sign, den))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

/// A value in `[0, ∞]`: a nonnegative rational or infinity.
///
/// The derived order puts every `Finite` value below `Infinity`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNonNeg {
    /// Payload is always `>= 0`; build through [`ExtNonNeg::finite`].
    Finite(Rational),
    Infinity,
}

impl ExtNonNeg {
    /// Panics on a negative argument.
    pub fn finite(r: Rational) -> Self {
        assert!(!r.is_negative(), "ExtNonNeg cannot hold negative value {r}");
        ExtNonNeg::Finite(r)
    }

    pub fn try_finite(r: Rational) -> Option<Self> {
        (!r.is_negative()).then_some(ExtNonNeg::Finite(r))
    }

    pub fn zero() -> Self {
        ExtNonNeg::Finite(Rational::zero())
    }

    pub fn one() -> Self {
        ExtNonNeg::Finite(Rational::one())
    }

    pub fn integer(n: u64) -> Self {
        ExtNonNeg::Finite(Rational::from_bigint(n.into()))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtNonNeg::Finite(r) if r.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtNonNeg::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtNonNeg::Infinity)
    }

    pub fn finite_value(&self) -> Option<&Rational> {
        match self {
            ExtNonNeg::Finite(r) => Some(r),
            ExtNonNeg::Infinity => None,
        }
    }
}

impl Default for ExtNonNeg {
    fn default() -> Self {
        ExtNonNeg::zero()
    }
}

/// `a + b`; infinity is absorbing.
pub fn ext_add(a: &ExtNonNeg, b: &ExtNonNeg) -> ExtNonNeg {
    match (a, b) {
        (ExtNonNeg::Finite(x), ExtNonNeg::Finite(y)) => ExtNonNeg::Finite(x + y),
        _ => ExtNonNeg::Infinity,
    }
}

/// `a · b` with `∞ · 0 = 0 · ∞ = 0`.
pub fn ext_mul(a: &ExtNonNeg, b: &ExtNonNeg) -> ExtNonNeg {
    match (a, b) {
        (ExtNonNeg::Finite(x), ExtNonNeg::Finite(y)) => ExtNonNeg::Finite(x * y),
        (ExtNonNeg::Infinity, other) | (other, ExtNonNeg::Infinity) => {
            if other.is_zero() {
                ExtNonNeg::zero()
            } else {
                ExtNonNeg::Infinity
            }
        }
    }
}

/// Scales an extended value by a nonnegative rational coefficient.
pub fn ext_scale(c: &Rational, x: &ExtNonNeg) -> ExtNonNeg {
    ext_mul(&ExtNonNeg::finite(c.clone()), x)
}

impl Add for ExtNonNeg {
    type Output = ExtNonNeg;
    fn add(self, rhs: ExtNonNeg) -> ExtNonNeg {
        ext_add(&self, &rhs)
    }
}

impl<'a> Add<&'a ExtNonNeg> for &'a ExtNonNeg {
    type Output = ExtNonNeg;
    fn add(self, rhs: &'a ExtNonNeg) -> ExtNonNeg {
        ext_add(self, rhs)
    }
}

impl Mul for ExtNonNeg {
    type Output = ExtNonNeg;
    fn mul(self, rhs: ExtNonNeg) -> ExtNonNeg {
        ext_mul(&self, &rhs)
    }
}

impl<'a> Mul<&'a ExtNonNeg> for &'a ExtNonNeg {
    type Output = ExtNonNeg;
    fn mul(self, rhs: &'a ExtNonNeg) -> ExtNonNeg {
        ext_mul(self, rhs)
    }
}

impl Sum for ExtNonNeg {
    fn sum<I: Iterator<Item = ExtNonNeg>>(iter: I) -> ExtNonNeg {
        let mut acc = Rational::zero();
        for x in iter {
            match x {
                ExtNonNeg::Finite(r) => acc += &r,
                ExtNonNeg::Infinity => return ExtNonNeg::Infinity,
            }
        }
        ExtNonNeg::Finite(acc)
    }
}

impl From<Rational> for ExtNonNeg {
    fn from(r: Rational) -> Self {
        ExtNonNeg::finite(r)
    }
}

impl fmt::Display for ExtNonNeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNonNeg::Finite(r) => fmt::Display::fmt(r, f),
            ExtNonNeg::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ExtNonNeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtNonNeg {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(ExtNonNeg::Infinity);
        }
        let r: Rational = s.parse()?;
        ExtNonNeg::try_finite(r).ok_or_else(|| ParseRationalError(s.to_string()))
    }
}

/// A countable series of nonnegative terms in one of three summable shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesDesc {
    FiniteList(Vec<ExtNonNeg>),
    /// `a + a·r + a·r² + …` with `a >= 0` and `0 <= r < 1`.
    Geometric {
        a: Rational,
        r: Rational,
    },
    /// `c + c + c + …`
    ConstantTail(ExtNonNeg),
}

impl SeriesDesc {
    /// Returns `None` unless `a >= 0` and `0 <= r < 1`.
    pub fn geometric(a: Rational, r: Rational) -> Option<Self> {
        let valid = !a.is_negative() && !r.is_negative() && r < Rational::one();
        valid.then_some(SeriesDesc::Geometric { a, r })
    }
}

/// Exact value of a [`SeriesDesc`].
pub fn ext_sum(s: &SeriesDesc) -> ExtNonNeg {
    match s {
        SeriesDesc::FiniteList(terms) => terms.iter().cloned().sum(),
        SeriesDesc::Geometric { a, r } => {
            assert!(
                !a.is_negative() && !r.is_negative() && *r < Rational::one(),
                "geometric series needs a >= 0 and 0 <= r < 1"
            );
            ExtNonNeg::Finite(a / &(Rational::one() - r))
        }
        SeriesDesc::ConstantTail(c) => {
            if c.is_zero() {
                ExtNonNeg::zero()
            } else {
                ExtNonNeg::Infinity
            }
        }
    }
}
