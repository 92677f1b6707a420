//! Exact dyadic rationals and the coefficient abstraction used by every
//! multivector in the crate.
//!
//! A [`Scalar`] is `numerator * 2^exponent` with an arbitrary precision
//! numerator. The canonical form keeps the numerator odd (or the value is
//! the zero scalar with exponent 0), so equality is structural and the zero
//! test is exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact value `numerator * 2^exponent`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    numerator: BigInt,
    exponent: i64,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { numerator: BigInt::zero(), exponent: 0 }
    }

    pub fn one() -> Self {
        Scalar { numerator: BigInt::one(), exponent: 0 }
    }

    /// Builds `numerator * 2^exponent` and normalizes it.
    pub fn dyadic(numerator: impl Into<BigInt>, exponent: i64) -> Self {
        Self::normalized(numerator.into(), exponent)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::dyadic(n, 0)
    }

    /// `2^-e`, e.g. the `1/2^m` normalization of the Hadamard transform.
    pub fn inverse_power_of_two(e: u32) -> Self {
        Self::dyadic(1, -(e as i64))
    }

    fn normalized(mut numerator: BigInt, mut exponent: i64) -> Self {
        if numerator.is_zero() {
            return Self::zero();
        }
        if let Some(tz) = numerator.trailing_zeros() {
            if tz > 0 {
                numerator >>= tz as usize;
                exponent += tz as i64;
            }
        }
        Scalar { numerator, exponent }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0 && self.numerator.is_one()
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        match self.numerator.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Scalar { numerator: self.numerator.abs(), exponent: self.exponent }
    }

    /// Nearest `f64`; only meant for reporting.
    pub fn to_f64(&self) -> f64 {
        let n = self.numerator.to_f64().unwrap_or(f64::NAN);
        n * 2f64.powi(self.exponent as i32)
    }

    /// Integer value, if the scalar is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.exponent < 0 {
            return None;
        }
        let shifted = &self.numerator << (self.exponent as usize);
        shifted.to_i64()
    }

    fn add_impl(&self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (lo, hi) = if self.exponent <= rhs.exponent { (self, rhs) } else { (rhs, self) };
        let shift = (hi.exponent - lo.exponent) as usize;
        let sum = &lo.numerator + (&hi.numerator << shift);
        Self::normalized(sum, lo.exponent)
    }

    fn mul_impl(&self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        // product of odd numerators is odd: already canonical
        Scalar {
            numerator: &self.numerator * &rhs.numerator,
            exponent: self.exponent + rhs.exponent,
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.add_impl(&rhs)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.add_impl(rhs)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.add_impl(rhs);
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.add_impl(&-rhs)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.add_impl(&-rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.mul_impl(&rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.mul_impl(rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { numerator: -self.numerator, exponent: self.exponent }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { numerator: -&self.numerator, exponent: self.exponent }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

/// Integers print as plain integers, everything else as `n/d` with `d` a
/// power of two.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent >= 0 {
            write!(f, "{}", &self.numerator << (self.exponent as usize))
        } else {
            let denominator = BigInt::one() << ((-self.exponent) as usize);
            write!(f, "{}/{}", self.numerator, denominator)
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `n`, `n/d` (d a power of two) and `n/2^e`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid dyadic scalar `{s}`"));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let numerator: BigInt = num.parse().map_err(|_| bad())?;
        let exponent = match den {
            None => 0,
            Some(d) => {
                if let Some(e) = d.strip_prefix("2^") {
                    let e: i64 = e.parse().map_err(|_| bad())?;
                    -e
                } else {
                    let d: BigInt = d.parse().map_err(|_| bad())?;
                    if !d.is_positive() || !(&d & (&d - 1u32)).is_zero() {
                        return Err(Error::Parse(format!(
                            "denominator of `{s}` is not a power of two"
                        )));
                    }
                    -(d.bits() as i64 - 1)
                }
            }
        };
        Ok(Scalar::dyadic(numerator, exponent))
    }
}

/// Field operations required of multivector coefficients.
///
/// [`Scalar`] is the exact implementation used for every correctness check;
/// `f64` exists so benchmarks can time hardware arithmetic through the same
/// code paths.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `numerator * 2^exponent`.
    fn from_dyadic(numerator: i64, exponent: i64) -> Self;

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.add_ref(rhs);
    }
}

impl Coefficient for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add_impl(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_dyadic(numerator: i64, exponent: i64) -> Self {
        Scalar::dyadic(numerator, exponent)
    }
}

impl Coefficient for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_dyadic(numerator: i64, exponent: i64) -> Self {
        numerator as f64 * 2f64.powi(exponent as i32)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

/// Tally of scalar multiplications performed by multivector products.
///
/// Counting is off until [`MulCounter::enabled`] or [`MulCounter::enable`];
/// additions and sign flips are never counted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MulCounter {
    enabled: bool,
    count: u64,
}

impl MulCounter {
    /// A counter that ignores multiplications.
    pub fn disabled() -> Self {
        MulCounter::default()
    }

    pub fn enabled() -> Self {
        MulCounter { enabled: true, count: 0 }
    }

    pub fn enable(&mut self) {
        self.enabled = true;
    }

    pub fn disable(&mut self) {
        self.enabled = false;
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    pub fn reset(&mut self) {
        self.count = 0;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Adds the tally of a context used by another branch of the same work.
    pub fn merge(&mut self, other: &MulCounter) {
        self.count += other.count;
    }

    /// Multiplies and records one multiplication.
    #[inline]
    pub fn mul<C: Coefficient>(&mut self, a: &C, b: &C) -> C {
        if self.enabled {
            self.count += 1;
        }
        a.mul_ref(b)
    }
}
