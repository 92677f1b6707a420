//! The standard basis of Cl(m,m): monomials `ζ = γ_{i1} γ_{i2} ⋯` over
//! ascending generator subsets, with `γ_{2i-1}² = +1` and `γ_{2i}² = -1`.
//!
//! Every product of two monomials is a signed monomial, so the dense product
//! costs `|a|·|b|` coefficient multiplications. This module is the reference
//! that the EFB product is checked against.

use std::fmt;

use crate::error::{Error, Result};
use crate::multivector::{Blade, Multivector};
use crate::scalar::{Coefficient, MulCounter, Scalar};
use crate::check_dim;

/// Bit `k` set for every even generator `γ_{k+1}` (`γ2, γ4, ...`).
const NEGATIVE_SQUARE_MASK: u64 = 0xAAAA_AAAA_AAAA_AAAA;

/// Ascending product of distinct generators, stored as a bitmask over the
/// `2m` generators (bit `k` is `γ_{k+1}`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaMonomial {
    m: u8,
    bits: u64,
}

impl GammaMonomial {
    /// `ζ_∅ = 1`.
    pub fn identity(m: usize) -> Result<Self> {
        check_dim(m)?;
        Ok(GammaMonomial { m: m as u8, bits: 0 })
    }

    /// Builds a monomial from 1-based generator indices, which must be
    /// strictly ascending.
    pub fn new(m: usize, indices: &[usize]) -> Result<Self> {
        check_dim(m)?;
        let mut bits = 0u64;
        let mut last = 0;
        for &i in indices {
            if i == 0 || i > 2 * m {
                return Err(Error::IndexOutOfRange { index: i, max: 2 * m });
            }
            if i <= last {
                return Err(Error::Parse(format!("indices {indices:?} are not strictly ascending")));
            }
            last = i;
            bits |= 1 << (i - 1);
        }
        Ok(GammaMonomial { m: m as u8, bits })
    }

    pub fn from_bits(m: usize, bits: u64) -> Result<Self> {
        check_dim(m)?;
        if 2 * m < 64 && bits >> (2 * m) != 0 {
            return Err(Error::IndexOutOfRange { index: 64 - bits.leading_zeros() as usize, max: 2 * m });
        }
        Ok(GammaMonomial { m: m as u8, bits })
    }

    pub(crate) fn from_bits_unchecked(m: usize, bits: u64) -> Self {
        GammaMonomial { m: m as u8, bits }
    }

    /// Single generator `γ_i`.
    pub fn generator(m: usize, i: usize) -> Result<Self> {
        Self::new(m, &[i])
    }

    /// `Γ = γ1 γ2 ⋯ γ_{2m}`.
    pub fn pseudoscalar(m: usize) -> Result<Self> {
        check_dim(m)?;
        Ok(GammaMonomial { m: m as u8, bits: full_mask(2 * m) })
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn grade(&self) -> u32 {
        self.bits.count_ones()
    }

    /// 1-based generator indices, ascending.
    pub fn indices(&self) -> Vec<usize> {
        (0..2 * self.m())
            .filter(|k| self.bits >> k & 1 == 1)
            .map(|k| k + 1)
            .collect()
    }

    /// All `2^{2m}` monomials, by increasing bitmask.
    pub fn all(m: usize) -> Result<impl Iterator<Item = GammaMonomial>> {
        check_dim(m)?;
        if m > 16 {
            return Err(Error::LimitExceeded { what: "basis enumeration", m, limit: 16 });
        }
        Ok((0..1u64 << (2 * m)).map(move |bits| GammaMonomial { m: m as u8, bits }))
    }

    /// Product of two monomials: always a signed monomial, never zero.
    pub fn product(&self, rhs: &GammaMonomial) -> Result<(i8, GammaMonomial)> {
        if self.m != rhs.m {
            return Err(Error::DimensionMismatch { left: self.m(), right: rhs.m() });
        }
        let negative = product_sign_negative(self.bits, rhs.bits);
        Ok((if negative { -1 } else { 1 }, GammaMonomial { m: self.m, bits: self.bits ^ rhs.bits }))
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Sign of `ζ_a ζ_b` relative to `ζ_{a xor b}`: one flip per transposition
/// of distinct generators while sorting, one per repeated even generator.
#[inline]
fn product_sign_negative(a: u64, b: u64) -> bool {
    let mut swaps = 0u32;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    swaps += (a & b & NEGATIVE_SQUARE_MASK).count_ones();
    swaps & 1 == 1
}

/// `γ_i²`: `+1` for odd `i`, `-1` for even `i`.
pub fn generator_square(m: usize, i: usize) -> Result<Scalar> {
    check_dim(m)?;
    if i == 0 || i > 2 * m {
        return Err(Error::IndexOutOfRange { index: i, max: 2 * m });
    }
    Ok(if i % 2 == 1 { Scalar::one() } else { -Scalar::one() })
}

/// Standard-basis product of two monomials as `(sign, monomial)`.
pub fn monomial_product(x: &GammaMonomial, y: &GammaMonomial) -> Result<(Scalar, GammaMonomial)> {
    let (sign, z) = x.product(y)?;
    Ok((Scalar::from_integer(sign as i64), z))
}

impl fmt::Debug for GammaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ[{}]", self)
    }
}

impl fmt::Display for GammaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().iter().map(|i| format!("g{i}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Blade for GammaMonomial {
    fn dim(&self) -> usize {
        self.m()
    }

    fn blade_product(&self, rhs: &Self) -> Option<(bool, Self)> {
        debug_assert_eq!(self.m, rhs.m);
        Some((product_sign_negative(self.bits, rhs.bits), GammaMonomial { m: self.m, bits: self.bits ^ rhs.bits }))
    }

    /// `"1"` or generator tokens `g<i>` in any order; out-of-order tokens
    /// are multiplied through.
    fn parse_blade(text: &str, m: usize) -> Result<(bool, Self)> {
        let mut acc = GammaMonomial::identity(m)?;
        let mut negative = false;
        if text == "1" {
            return Ok((false, acc));
        }
        for token in text.split_whitespace() {
            let index: usize = token
                .strip_prefix('g')
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| Error::Parse(format!("invalid generator token `{token}`")))?;
            let g = GammaMonomial::generator(m, index)?;
            let (sign, next) = acc.product(&g)?;
            negative ^= sign < 0;
            acc = next;
        }
        if text.split_whitespace().next().is_none() {
            return Err(Error::Parse("empty monomial".into()));
        }
        Ok((negative, acc))
    }
}

/// Multivector in the standard basis.
pub type GammaMultivector<C = Scalar> = Multivector<GammaMonomial, C>;

impl<C: Coefficient> Multivector<GammaMonomial, C> {
    /// Dense bilinear product; records `|a|·|b|` multiplications.
    pub fn gamma_product_with(&self, rhs: &Self, counter: &mut MulCounter) -> Result<Self> {
        self.naive_product_with(rhs, counter)
    }

    pub fn gamma_product(&self, rhs: &Self) -> Result<Self> {
        self.naive_product_with(rhs, &mut MulCounter::disabled())
    }

    /// The scalar multiple of the identity.
    pub fn scalar(m: usize, value: C) -> Result<Self> {
        Ok(Self::term(GammaMonomial::identity(m)?, value))
    }

    /// `ab + ba`.
    pub fn anticommutator(&self, rhs: &Self) -> Result<Self> {
        self.gamma_product(rhs)?.add(&rhs.gamma_product(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent sign oracle: sort the concatenated index list by adjacent
    /// swaps, then contract equal neighbours using the generator squares.
    fn oracle(m: usize, x: &[usize], y: &[usize]) -> (i64, Vec<usize>) {
        let mut word: Vec<usize> = x.iter().chain(y.iter()).copied().collect();
        let mut sign = 1i64;
        let mut changed = true;
        while changed {
            changed = false;
            for k in 0..word.len().saturating_sub(1) {
                if word[k] > word[k + 1] {
                    word.swap(k, k + 1);
                    sign = -sign;
                    changed = true;
                }
            }
        }
        let mut out = Vec::new();
        let mut k = 0;
        while k < word.len() {
            if k + 1 < word.len() && word[k] == word[k + 1] {
                if word[k] % 2 == 0 {
                    sign = -sign;
                }
                k += 2;
            } else {
                out.push(word[k]);
                k += 1;
            }
        }
        assert!(out.iter().all(|&i| i <= 2 * m));
        (sign, out)
    }

    #[test]
    fn generator_squares() {
        assert_eq!(generator_square(2, 1).unwrap(), Scalar::one());
        assert_eq!(generator_square(2, 2).unwrap(), -Scalar::one());
        assert_eq!(generator_square(2, 3).unwrap(), Scalar::one());
        assert!(generator_square(2, 5).is_err());
        assert!(generator_square(2, 0).is_err());
    }

    #[test]
    fn monomial_product_examples() {
        let m = 1;
        let one = GammaMonomial::identity(m).unwrap();
        let g12 = GammaMonomial::new(m, &[1, 2]).unwrap();
        let g1 = GammaMonomial::new(m, &[1]).unwrap();
        let g2 = GammaMonomial::new(m, &[2]).unwrap();
        assert_eq!(monomial_product(&one, &g12).unwrap(), (Scalar::one(), g12));
        assert_eq!(monomial_product(&g1, &g1).unwrap(), (Scalar::one(), one));
        assert_eq!(monomial_product(&g2, &g1).unwrap(), (-Scalar::one(), g12));
        let other = GammaMonomial::identity(2).unwrap();
        assert!(matches!(monomial_product(&g1, &other), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn sign_rule_matches_oracle_exhaustively() {
        for m in 1..=3 {
            for x in GammaMonomial::all(m).unwrap() {
                for y in GammaMonomial::all(m).unwrap() {
                    let (sign, z) = x.product(&y).unwrap();
                    let (osign, oz) = oracle(m, &x.indices(), &y.indices());
                    assert_eq!(sign as i64, osign, "{x} * {y}");
                    assert_eq!(z.indices(), oz);
                }
            }
        }
    }

    #[test]
    fn anticommutation_of_generators() {
        let m = 3;
        for i in 1..=2 * m {
            for j in 1..=2 * m {
                let gi = GammaMultivector::<Scalar>::blade(GammaMonomial::generator(m, i).unwrap());
                let gj = GammaMultivector::<Scalar>::blade(GammaMonomial::generator(m, j).unwrap());
                let ac = gi.anticommutator(&gj).unwrap();
                if i == j {
                    let expected = GammaMultivector::scalar(m, generator_square(m, i).unwrap() * Scalar::from(2)).unwrap();
                    assert_eq!(ac, expected);
                } else {
                    assert!(ac.is_zero());
                }
            }
        }
    }

    #[test]
    fn sum_times_difference_regression() {
        // (γ1 + γ2)(γ1 - γ2) = γ1² - γ1γ2 + γ2γ1 - γ2² = 2 - 2 γ12
        let a = GammaMultivector::<Scalar>::parse("1*g1 + 1*g2", 1).unwrap();
        let b = GammaMultivector::<Scalar>::parse("1*g1 + -1*g2", 1).unwrap();
        let p = a.gamma_product(&b).unwrap();
        assert_eq!(p.to_string(), "2*1 + -2*g1 g2");
    }

    #[test]
    fn unit_and_counts() {
        let b = GammaMultivector::<Scalar>::parse("1/2*g1 g2 + -1/4*1 + 3*g3", 2).unwrap();
        let one = GammaMultivector::scalar(2, Scalar::one()).unwrap();
        assert_eq!(one.gamma_product(&b).unwrap(), b);
        let mut c = MulCounter::enabled();
        b.gamma_product_with(&b, &mut c).unwrap();
        assert_eq!(c.count(), 9);
    }

    #[test]
    fn text_format() {
        let a = GammaMultivector::<Scalar>::parse("1/2*g1 g2 + -1/4*1", 1).unwrap();
        assert_eq!(a.to_string(), "-1/4*1 + 1/2*g1 g2");
        let b = GammaMultivector::<Scalar>::parse("1*g2 g1", 1).unwrap();
        assert_eq!(b.to_string(), "-1*g1 g2");
        assert!(GammaMultivector::<Scalar>::parse("1*g5", 2).is_err());
        assert!(GammaMultivector::<Scalar>::parse("1*h1", 2).is_err());
        assert!(GammaMultivector::<Scalar>::parse("g1", 2).is_err());
    }

    #[test]
    fn invalid_monomials() {
        assert!(GammaMonomial::new(2, &[2, 1]).is_err());
        assert!(GammaMonomial::new(2, &[1, 1]).is_err());
        assert!(GammaMonomial::new(2, &[5]).is_err());
        assert!(GammaMonomial::from_bits(1, 0b100).is_err());
    }
}
