#![allow(dead_code)]

use efb_core::{EfbElement, EfbMultivector, GammaMonomial, GammaMultivector, Scalar};
use rand::Rng;

/// Small nonzero dyadic coefficient.
pub fn coefficient<R: Rng>(rng: &mut R) -> Scalar {
    let n = rng.gen_range(1..=9i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Scalar::dyadic(n, rng.gen_range(-3..=2))
}

pub fn sparse_efb<R: Rng>(m: usize, terms: usize, rng: &mut R) -> EfbMultivector {
    let mut mv = EfbMultivector::zero(m);
    for _ in 0..terms {
        let bits = rng.gen_range(0..1u64 << (2 * m));
        mv.add_term(EfbElement::from_bits(m, bits).unwrap(), coefficient(rng));
    }
    mv
}

pub fn sparse_gamma<R: Rng>(m: usize, terms: usize, rng: &mut R) -> GammaMultivector {
    let mut mv = GammaMultivector::zero(m);
    for _ in 0..terms {
        let bits = rng.gen_range(0..1u64 << (2 * m));
        mv.add_term(GammaMonomial::from_bits(m, bits).unwrap(), coefficient(rng));
    }
    mv
}
