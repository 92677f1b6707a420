//! Sparse multivector storage shared by the gamma and EFB representations.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::scalar::{Coefficient, MulCounter, Scalar};

/// A basis element of Cl(m,m) in some fixed basis.
pub trait Blade: Copy + Ord + Hash + fmt::Debug + fmt::Display {
    /// Number of generator pairs `m`.
    fn dim(&self) -> usize;

    /// Product of two blades of the same `m`: `None` when it vanishes,
    /// otherwise `(negative, blade)`.
    fn blade_product(&self, rhs: &Self) -> Option<(bool, Self)>;

    /// Parses the blade part of a term (`"g1 g3"`, `"qp p q"`, ...).
    /// Returns the sign picked up while normalizing, if any.
    fn parse_blade(text: &str, m: usize) -> Result<(bool, Self)>;
}

/// Scalar-weighted sparse sum of blades. No stored coefficient is ever zero.
#[derive(Clone, PartialEq)]
pub struct Multivector<K: Blade, C: Coefficient = Scalar> {
    m: usize,
    terms: BTreeMap<K, C>,
}

impl<K: Blade, C: Coefficient> Multivector<K, C> {
    pub fn zero(m: usize) -> Self {
        Multivector { m, terms: BTreeMap::new() }
    }

    /// `coefficient * blade`.
    pub fn term(blade: K, coefficient: C) -> Self {
        let mut mv = Self::zero(blade.dim());
        mv.add_term(blade, coefficient);
        mv
    }

    pub fn blade(blade: K) -> Self {
        Self::term(blade, C::one())
    }

    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (K, C)>) -> Result<Self> {
        let mut mv = Self::zero(m);
        for (k, c) in terms {
            if k.dim() != m {
                return Err(Error::DimensionMismatch { left: m, right: k.dim() });
            }
            mv.add_term(k, c);
        }
        Ok(mv)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact zero test.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, blade: &K) -> Option<&C> {
        self.terms.get(blade)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, C> {
        self.terms.iter()
    }

    pub fn blades(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Accumulates `coefficient * blade`, dropping the entry if it cancels.
    pub fn add_term(&mut self, blade: K, coefficient: C) {
        debug_assert_eq!(blade.dim(), self.m);
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(blade) {
            Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&coefficient);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch { left: self.m, right: other.m });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Multivector {
            m: self.m,
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, factor: &C) -> Self {
        if factor.is_zero() {
            return Self::zero(self.m);
        }
        Multivector {
            m: self.m,
            terms: self.terms.iter().map(|(k, c)| (*k, c.mul_ref(factor))).collect(),
        }
    }

    /// Bilinear expansion over every pair of terms. Pairs whose blade
    /// product vanishes are skipped before any coefficient is multiplied.
    pub fn naive_product_with(&self, rhs: &Self, counter: &mut MulCounter) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = Self::zero(self.m);
        for (ka, ca) in self.iter() {
            for (kb, cb) in rhs.iter() {
                if let Some((negative, k)) = ka.blade_product(kb) {
                    let c = counter.mul(ca, cb);
                    out.add_term(k, if negative { c.neg_ref() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient (e.g. to change coefficient type).
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Multivector<K, D> {
        let mut out = Multivector::zero(self.m);
        for (k, c) in self.iter() {
            out.add_term(*k, f(c));
        }
        out
    }

    /// Parses `coef*blade + coef*blade + ...`; `0` is the zero multivector.
    pub fn parse(text: &str, m: usize) -> Result<Self>
    where
        C: std::str::FromStr<Err = Error>,
    {
        let mut mv = Self::zero(m);
        let text = text.trim();
        if text == "0" {
            return Ok(mv);
        }
        for piece in text.split('+') {
            let piece = piece.trim();
            let (coef, blade) = piece
                .split_once('*')
                .ok_or_else(|| Error::Parse(format!("term `{piece}` is not of the form coef*blade")))?;
            let coef: C = coef.trim().parse()?;
            let (negative, blade) = K::parse_blade(blade.trim(), m)?;
            mv.add_term(blade, if negative { coef.neg_ref() } else { coef });
        }
        Ok(mv)
    }
}

impl<K: Blade, C: Coefficient> fmt::Display for Multivector<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{k}")?;
        }
        Ok(())
    }
}

impl<K: Blade, C: Coefficient> fmt::Debug for Multivector<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector[m={}]({})", self.m, self)
    }
}

impl<'a, K: Blade, C: Coefficient> IntoIterator for &'a Multivector<K, C> {
    type Item = (&'a K, &'a C);
    type IntoIter = btree_map::Iter<'a, K, C>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}
