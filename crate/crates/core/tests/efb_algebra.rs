mod common;

use std::collections::BTreeSet;

use efb_core::efb::{efb_basis_product, EfbSymbol::*};
use efb_core::transform::{efb_element_to_gamma, efb_to_gamma, gamma_to_efb};
use efb_core::{EfbElement, EfbMultivector, GammaMonomial, GammaMultivector, MulCounter, Scalar, Signature};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gamma_of(e: &EfbElement) -> GammaMultivector {
    efb_element_to_gamma::<Scalar>(e)
}

#[test]
fn basis_products_match_gamma_oracle_exhaustively() {
    for m in 1..=3 {
        let basis: Vec<EfbElement> = EfbElement::all(m).unwrap().collect();
        let images: Vec<GammaMultivector> = basis.iter().map(gamma_of).collect();
        for (a, ga) in basis.iter().zip(&images) {
            for (b, gb) in basis.iter().zip(&images) {
                let oracle = ga.gamma_product(gb).unwrap();
                match efb_basis_product(a, b).unwrap() {
                    None => assert!(oracle.is_zero(), "{a} * {b} should vanish"),
                    Some((sign, c)) => {
                        let expected = gamma_of(&c).scale(&Scalar::from(sign as i64));
                        assert_eq!(oracle, expected, "{a} * {b}");
                    }
                }
            }
        }
    }
}

#[test]
fn interleaving_sign_regression() {
    // p1 q2 · q1 p2 = -p1 q1 · q2 p2
    let a = EfbElement::new(&[P, Q]).unwrap();
    let b = EfbElement::new(&[Q, P]).unwrap();
    let (sign, c) = efb_basis_product(&a, &b).unwrap().unwrap();
    assert_eq!((sign, c), (-1, EfbElement::new(&[PQ, QP]).unwrap()));
    let oracle = gamma_of(&a).gamma_product(&gamma_of(&b)).unwrap();
    assert_eq!(oracle, gamma_of(&c).neg());
}

#[test]
fn random_products_match_gamma_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 1..=4 {
        for _ in 0..40 {
            let a = common::sparse_efb(m, 6, &mut rng);
            let b = common::sparse_efb(m, 6, &mut rng);
            let efb = efb_to_gamma(&a.efb_product(&b).unwrap()).unwrap();
            let direct = efb_to_gamma(&a)
                .unwrap()
                .gamma_product(&efb_to_gamma(&b).unwrap())
                .unwrap();
            assert_eq!(efb, direct);
        }
    }
}

#[test]
fn unique_partner_per_signature() {
    for m in 1..=3 {
        let basis: Vec<EfbElement> = EfbElement::all(m).unwrap().collect();
        for psi in &basis {
            for r in Signature::all(m).unwrap() {
                let survivors: Vec<_> = EfbElement::with_signature(r)
                    .filter_map(|phi| efb_basis_product(psi, &phi).unwrap().map(|p| (phi, p)))
                    .collect();
                assert_eq!(survivors.len(), 1, "{psi} with signature {r:?}");
                let (phi, (_, product)) = survivors[0];
                assert_eq!(phi, psi.unique_partner(&r));
                assert_eq!(product.signature(), psi.signature().times(&r));
            }
            let partners = basis.iter().filter(|phi| psi.product(phi).is_some()).count();
            assert_eq!(partners, 1 << m);
        }
    }
}

#[test]
fn idempotents_and_nilpotents() {
    for m in 1..=4 {
        let mut idempotents = Vec::new();
        let mut nilpotents = 0usize;
        for psi in EfbElement::all(m).unwrap() {
            match efb_basis_product(&psi, &psi).unwrap() {
                Some((1, sq)) if sq == psi => idempotents.push(psi),
                None => nilpotents += 1,
                other => panic!("{psi}² = {other:?}"),
            }
        }
        let expected: BTreeSet<_> = EfbElement::with_signature(Signature::all_even(m).unwrap()).collect();
        assert_eq!(idempotents.iter().copied().collect::<BTreeSet<_>>(), expected);
        assert_eq!(nilpotents, (1 << m) * ((1 << m) - 1));
        for a in &idempotents {
            for b in &idempotents {
                assert_eq!(efb_basis_product(a, b).unwrap(), efb_basis_product(b, a).unwrap());
            }
        }
    }
}

#[test]
fn dense_product_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in 1..=4 {
        let a: EfbMultivector = efb_core::bench::dense_efb(m, &mut rng).unwrap();
        let b: EfbMultivector = efb_core::bench::dense_efb(m, &mut rng).unwrap();
        let mut fast = MulCounter::enabled();
        let mut naive = MulCounter::enabled();
        let x = a.efb_product_with(&b, &mut fast).unwrap();
        let y = a.naive_product_with(&b, &mut naive).unwrap();
        assert_eq!(x, y);
        assert_eq!(fast.count(), 1 << (3 * m));
        assert_eq!(naive.count(), 1 << (3 * m));

        let ga = efb_to_gamma(&a).unwrap();
        let gb = efb_to_gamma(&b).unwrap();
        assert_eq!(ga.len(), 1 << (2 * m));
        let mut direct = MulCounter::enabled();
        let z = ga.gamma_product_with(&gb, &mut direct).unwrap();
        assert_eq!(direct.count(), 1 << (4 * m));
        assert_eq!(gamma_to_efb(&z).unwrap(), x);
    }
}

#[test]
fn associativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in 1..=4 {
        for _ in 0..10 {
            let (a, b, c) = (
                common::sparse_gamma(m, 5, &mut rng),
                common::sparse_gamma(m, 5, &mut rng),
                common::sparse_gamma(m, 5, &mut rng),
            );
            let left = a.gamma_product(&b).unwrap().gamma_product(&c).unwrap();
            let right = a.gamma_product(&b.gamma_product(&c).unwrap()).unwrap();
            assert_eq!(left, right);

            let (x, y, z) = (
                common::sparse_efb(m, 5, &mut rng),
                common::sparse_efb(m, 5, &mut rng),
                common::sparse_efb(m, 5, &mut rng),
            );
            let left = x.efb_product(&y).unwrap().efb_product(&z).unwrap();
            let right = x.efb_product(&y.efb_product(&z).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }
}

#[test]
fn gamma_monomial_products_never_vanish() {
    for m in 1..=3 {
        let basis: Vec<_> = GammaMonomial::all(m).unwrap().collect();
        for x in &basis {
            for y in &basis {
                let p = GammaMultivector::<Scalar>::blade(*x)
                    .gamma_product(&GammaMultivector::blade(*y))
                    .unwrap();
                assert_eq!(p.len(), 1);
            }
        }
    }
}

#[test]
fn efb_identity_maps_to_gamma_one() {
    for m in 1..=4 {
        let one = EfbMultivector::identity(m).unwrap();
        assert_eq!(
            efb_to_gamma(&one).unwrap(),
            GammaMultivector::scalar(m, Scalar::one()).unwrap()
        );
    }
}

#[test]
fn f64_products_agree_with_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a = common::sparse_efb(3, 20, &mut rng);
    let b = common::sparse_efb(3, 20, &mut rng);
    let exact = a.efb_product(&b).unwrap().map_coefficients(Scalar::to_f64);
    let float = a
        .map_coefficients(Scalar::to_f64)
        .efb_product(&b.map_coefficients(Scalar::to_f64))
        .unwrap();
    assert_eq!(exact, float);
}
