//! Extended Fock basis of Cl(m,m).
//!
//! A basis element is an ordered product `ψ1 ψ2 ⋯ ψm` with one factor per
//! generator pair, `ψi ∈ {q_i p_i, p_i q_i, p_i, q_i}`. Factors from
//! different pairs commute up to sign, so the product of two basis elements
//! reduces to the slotwise products of a four-element table, half of whose
//! entries vanish. For every left factor exactly one right factor per
//! signature survives, which is what brings the dense product down to
//! `2^{3m}` coefficient multiplications.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::multivector::{Blade, Multivector};
use crate::scalar::{Coefficient, MulCounter, Scalar};
use crate::check_dim;

/// One slot of an EFB element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum EfbSymbol {
    /// `q_i p_i`
    QP = 0,
    /// `p_i q_i`
    PQ = 1,
    /// `p_i`
    P = 2,
    /// `q_i`
    Q = 3,
}

use EfbSymbol::{P, PQ, Q, QP};

/// Slot products, indexed `[left][right]`. Every nonzero entry has
/// coefficient +1.
const SLOT_TABLE: [[Option<EfbSymbol>; 4]; 4] = [
    // QP · (QP, PQ, P, Q)
    [Some(QP), None, None, Some(Q)],
    // PQ
    [None, Some(PQ), Some(P), None],
    // P
    [Some(P), None, None, Some(PQ)],
    // Q
    [None, Some(Q), Some(QP), None],
];

impl EfbSymbol {
    pub const ALL: [EfbSymbol; 4] = [QP, PQ, P, Q];

    fn from_tag(tag: u64) -> EfbSymbol {
        Self::ALL[(tag & 3) as usize]
    }

    /// True for `p_i`, `q_i`, which change sign under `γ → -γ`.
    pub fn is_odd(self) -> bool {
        (self as u8) & 2 != 0
    }

    /// `+1` for the bivectors, `-1` for the null vectors.
    pub fn parity(self) -> i8 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            QP => "qp",
            PQ => "pq",
            P => "p",
            Q => "q",
        }
    }

    pub fn from_token(token: &str) -> Result<EfbSymbol> {
        match token {
            "qp" => Ok(QP),
            "pq" => Ok(PQ),
            "p" => Ok(P),
            "q" => Ok(Q),
            _ => Err(Error::Parse(format!("invalid EFB slot token `{token}`"))),
        }
    }

    /// The null vector the symbol starts with: `q` for `qp`, `q`; `p` for
    /// `pq`, `p`.
    pub fn leading_null(self) -> EfbSymbol {
        match self {
            QP | Q => Q,
            PQ | P => P,
        }
    }
}

impl fmt::Display for EfbSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Product of two slot symbols of the same pair; `None` is zero.
pub fn slot_product(a: EfbSymbol, b: EfbSymbol) -> Option<EfbSymbol> {
    SLOT_TABLE[a as usize][b as usize]
}

/// The only symbol of the requested parity whose product with `a` is
/// nonzero.
pub fn slot_partner(a: EfbSymbol, odd: bool) -> EfbSymbol {
    EfbSymbol::ALL
        .into_iter()
        .find(|&b| b.is_odd() == odd && slot_product(a, b).is_some())
        .expect("every row of the slot table has one nonzero entry per parity")
}

/// Slot parities of an EFB element; bit `i` set means slot `i+1` is odd.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    m: u8,
    odd: u64,
}

impl Signature {
    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        check_dim(signs.len())?;
        let mut odd = 0u64;
        for (i, &s) in signs.iter().enumerate() {
            match s {
                1 => {}
                -1 => odd |= 1 << i,
                _ => return Err(Error::Parse(format!("signature entry {s} is not ±1"))),
            }
        }
        Ok(Signature { m: signs.len() as u8, odd })
    }

    pub fn from_odd_mask(m: usize, odd: u64) -> Result<Self> {
        check_dim(m)?;
        if m < 64 && odd >> m != 0 {
            return Err(Error::Parse(format!("signature mask {odd:#b} has more than {m} slots")));
        }
        Ok(Signature { m: m as u8, odd })
    }

    /// `(1, 1, …, 1)`.
    pub fn all_even(m: usize) -> Result<Self> {
        Self::from_odd_mask(m, 0)
    }

    pub fn all(m: usize) -> Result<impl Iterator<Item = Signature>> {
        check_dim(m)?;
        if m > 16 {
            return Err(Error::LimitExceeded { what: "signature enumeration", m, limit: 16 });
        }
        Ok((0..1u64 << m).map(move |odd| Signature { m: m as u8, odd }))
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.m()).map(|i| if self.odd >> i & 1 == 1 { -1 } else { 1 }).collect()
    }

    pub fn is_all_even(&self) -> bool {
        self.odd == 0
    }

    /// Componentwise product.
    pub fn times(&self, other: &Signature) -> Signature {
        Signature { m: self.m, odd: self.odd ^ other.odd }
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.signs())
    }
}

/// Basis element `ψ1 ψ2 ⋯ ψm`, two bits per slot (slot 1 in the low bits).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EfbElement {
    m: u8,
    bits: u64,
}

impl EfbElement {
    pub fn new(slots: &[EfbSymbol]) -> Result<Self> {
        check_dim(slots.len())?;
        let bits = slots
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &s)| acc | (s as u64) << (2 * i));
        Ok(EfbElement { m: slots.len() as u8, bits })
    }

    /// Element with the same symbol in every slot.
    pub fn uniform(m: usize, symbol: EfbSymbol) -> Result<Self> {
        Self::new(&vec![symbol; m])
    }

    pub fn from_bits(m: usize, bits: u64) -> Result<Self> {
        check_dim(m)?;
        if 2 * m < 64 && bits >> (2 * m) != 0 {
            return Err(Error::Parse(format!("EFB bit pattern {bits:#x} has more than {m} slots")));
        }
        Ok(EfbElement { m: m as u8, bits })
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Symbol in 0-based slot `i`.
    #[inline]
    pub fn slot(&self, i: usize) -> EfbSymbol {
        EfbSymbol::from_tag(self.bits >> (2 * i))
    }

    pub fn slots(&self) -> Vec<EfbSymbol> {
        (0..self.m()).map(|i| self.slot(i)).collect()
    }

    /// Copy with 0-based slot `i` replaced.
    pub fn with_slot(&self, i: usize, symbol: EfbSymbol) -> EfbElement {
        let cleared = self.bits & !(3u64 << (2 * i));
        EfbElement { m: self.m, bits: cleared | (symbol as u64) << (2 * i) }
    }

    #[inline]
    fn odd_mask(&self) -> u64 {
        let mut odd = 0u64;
        for i in 0..self.m() {
            odd |= (self.bits >> (2 * i + 1) & 1) << i;
        }
        odd
    }

    pub fn signature(&self) -> Signature {
        Signature { m: self.m, odd: self.odd_mask() }
    }

    /// All `4^m` elements, by increasing bit pattern.
    pub fn all(m: usize) -> Result<impl Iterator<Item = EfbElement>> {
        check_dim(m)?;
        if m > 16 {
            return Err(Error::LimitExceeded { what: "basis enumeration", m, limit: 16 });
        }
        Ok((0..1u64 << (2 * m)).map(move |bits| EfbElement { m: m as u8, bits }))
    }

    /// The `2^m` elements of a given signature.
    pub fn with_signature(signature: Signature) -> impl Iterator<Item = EfbElement> {
        let m = signature.m();
        (0..1u64 << m).map(move |low| {
            let mut bits = 0u64;
            for i in 0..m {
                let tag = (signature.odd >> i & 1) << 1 | (low >> i & 1);
                bits |= tag << (2 * i);
            }
            EfbElement { m: m as u8, bits }
        })
    }

    /// Product with another element: `None` when it vanishes.
    #[inline]
    pub fn product(&self, rhs: &EfbElement) -> Option<(bool, EfbElement)> {
        let mut bits = 0u64;
        for i in 0..self.m() {
            let s = slot_product(self.slot(i), rhs.slot(i))?;
            bits |= (s as u64) << (2 * i);
        }
        Some((reorder_negative(self.odd_mask(), rhs.odd_mask()), EfbElement { m: self.m, bits }))
    }

    /// The one element of signature `r` whose product with `self` survives.
    pub fn unique_partner(&self, r: &Signature) -> EfbElement {
        let mut bits = 0u64;
        for i in 0..self.m() {
            let odd = r.odd >> i & 1 == 1;
            bits |= (slot_partner(self.slot(i), odd) as u64) << (2 * i);
        }
        EfbElement { m: self.m, bits }
    }
}

/// Sign of interleaving `ψ1⋯ψm φ1⋯φm` into `ψ1φ1 ψ2φ2 ⋯`: each odd `φ_i`
/// moves left past every odd `ψ_j` with `j > i`.
#[inline]
fn reorder_negative(left_odd: u64, right_odd: u64) -> bool {
    let mut t = 0u32;
    let mut rest = right_odd;
    while rest != 0 {
        let i = rest.trailing_zeros();
        t += (left_odd >> i >> 1).count_ones();
        rest &= rest - 1;
    }
    t & 1 == 1
}

/// Product of two basis elements as `(±1, element)`, or `None` for zero.
pub fn efb_basis_product(a: &EfbElement, b: &EfbElement) -> Result<Option<(i8, EfbElement)>> {
    if a.m != b.m {
        return Err(Error::DimensionMismatch { left: a.m(), right: b.m() });
    }
    Ok(a.product(b).map(|(neg, e)| (if neg { -1 } else { 1 }, e)))
}

pub fn signature_of(element: &EfbElement) -> Signature {
    element.signature()
}

pub fn unique_partner(element: &EfbElement, r: &Signature) -> Result<EfbElement> {
    if element.m != r.m {
        return Err(Error::DimensionMismatch { left: element.m(), right: r.m() });
    }
    Ok(element.unique_partner(r))
}

impl fmt::Debug for EfbElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

impl fmt::Display for EfbElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.slot(i).token())?;
        }
        Ok(())
    }
}

impl Blade for EfbElement {
    fn dim(&self) -> usize {
        self.m()
    }

    fn blade_product(&self, rhs: &Self) -> Option<(bool, Self)> {
        self.product(rhs)
    }

    fn parse_blade(text: &str, m: usize) -> Result<(bool, Self)> {
        let slots = text
            .split_whitespace()
            .map(EfbSymbol::from_token)
            .collect::<Result<Vec<_>>>()?;
        if slots.len() != m {
            return Err(Error::Parse(format!(
                "EFB element `{text}` has {} slots, expected {m}",
                slots.len()
            )));
        }
        Ok((false, EfbElement::new(&slots)?))
    }
}

/// Multivector in EFB coordinates.
pub type EfbMultivector<C = Scalar> = Multivector<EfbElement, C>;

impl<C: Coefficient> Multivector<EfbElement, C> {
    /// `1 = ∏ (q_i p_i + p_i q_i)`, the sum of the `2^m` elements of
    /// signature `(1, …, 1)`.
    pub fn identity(m: usize) -> Result<Self> {
        let sig = Signature::all_even(m)?;
        Self::from_terms(m, EfbElement::with_signature(sig).map(|e| (e, C::one())))
    }

    /// Signatures occurring among the terms.
    pub fn signatures(&self) -> BTreeSet<Signature> {
        self.blades().map(|e| e.signature()).collect()
    }

    /// Product that jumps straight to the single surviving right factor in
    /// each signature block; only surviving pairs are multiplied.
    pub fn efb_product_with(&self, rhs: &Self, counter: &mut MulCounter) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: rhs.dim() });
        }
        let blocks: Vec<Signature> = rhs.signatures().into_iter().collect();
        let mut out = Self::zero(self.dim());
        for (psi, a) in self.iter() {
            for r in &blocks {
                let phi = psi.unique_partner(r);
                if let Some(b) = rhs.get(&phi) {
                    let (negative, e) = psi.product(&phi).expect("partner product is nonzero");
                    let c = counter.mul(a, b);
                    out.add_term(e, if negative { c.neg_ref() } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn efb_product(&self, rhs: &Self) -> Result<Self> {
        self.efb_product_with(rhs, &mut MulCounter::disabled())
    }

    /// `ab + ba`.
    pub fn anticommutator(&self, rhs: &Self) -> Result<Self> {
        self.efb_product(rhs)?.add(&rhs.efb_product(self)?)
    }

    /// `self^k` by left-to-right multiplication; `k = 0` gives the identity.
    pub fn power(&self, k: usize) -> Result<Self> {
        let mut acc = Self::identity(self.dim())?;
        for _ in 0..k {
            acc = acc.efb_product(self)?;
        }
        Ok(acc)
    }
}
