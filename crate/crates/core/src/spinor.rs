//! Simple-spinor structure of EFB elements: the Weyl sign under the
//! pseudoscalar, the maximal totally null plane that annihilates an element,
//! and the `2^m` elements sharing that plane.

use std::collections::BTreeSet;
use std::fmt;

use crate::efb::{EfbElement, EfbMultivector, EfbSymbol};
use crate::error::Result;
use crate::scalar::Coefficient;
use crate::transform::{witt_vector_efb, NullKind};

/// One null vector per slot, spanning an `m`-dimensional totally null plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TnpBasis {
    vectors: Vec<NullKind>,
}

impl TnpBasis {
    pub fn m(&self) -> usize {
        self.vectors.len()
    }

    /// `v_1, …, v_m` (index `i-1` holds `v_i`).
    pub fn kinds(&self) -> &[NullKind] {
        &self.vectors
    }

    /// The spanning vectors as EFB multivectors.
    pub fn vectors<C: Coefficient>(&self) -> Result<Vec<EfbMultivector<C>>> {
        let m = self.m();
        self.vectors
            .iter()
            .enumerate()
            .map(|(i, &k)| witt_vector_efb(k, i + 1, m))
            .collect()
    }
}

impl fmt::Display for TnpBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, k)| format!("{k}{}", i + 1))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `ε` with `Γ Ψ = ε Ψ`, `Γ = γ1⋯γ_{2m} = ∏ (q_i p_i - p_i q_i)`.
///
/// `(q p - p q)` fixes `q p` and `q` and negates `p q` and `p`.
pub fn weyl_sign(element: &EfbElement) -> i8 {
    let negated = element
        .slots()
        .into_iter()
        .filter(|s| matches!(s, EfbSymbol::PQ | EfbSymbol::P))
        .count();
    if negated % 2 == 0 {
        1
    } else {
        -1
    }
}

/// First null vector of each slot.
pub fn tnp_of(element: &EfbElement) -> TnpBasis {
    TnpBasis {
        vectors: element
            .slots()
            .into_iter()
            .map(|s| match s.leading_null() {
                EfbSymbol::Q => NullKind::Q,
                _ => NullKind::P,
            })
            .collect(),
    }
}

/// The `2^m` elements with the same null plane, obtained by toggling
/// `p ↔ p q` and `q ↔ q p` independently in each slot.
pub fn tnp_class(element: &EfbElement) -> BTreeSet<EfbElement> {
    let m = element.m();
    (0..1u64 << m)
        .map(|toggles| {
            (0..m).fold(*element, |acc, i| {
                if toggles >> i & 1 == 0 {
                    return acc;
                }
                let flipped = match acc.slot(i) {
                    EfbSymbol::P => EfbSymbol::PQ,
                    EfbSymbol::PQ => EfbSymbol::P,
                    EfbSymbol::Q => EfbSymbol::QP,
                    EfbSymbol::QP => EfbSymbol::Q,
                };
                acc.with_slot(i, flipped)
            })
        })
        .collect()
}

/// The element if `a` is a nonzero multiple of a single EFB element.
pub fn is_simple_spinor_form<C: Coefficient>(a: &EfbMultivector<C>) -> Option<EfbElement> {
    if a.len() == 1 {
        a.blades().next().copied()
    } else {
        None
    }
}
