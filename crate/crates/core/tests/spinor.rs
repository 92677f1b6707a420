use std::collections::BTreeSet;

use efb_core::spinor::{tnp_class, tnp_of, weyl_sign};
use efb_core::transform::efb_element_to_gamma;
use efb_core::{EfbElement, EfbMultivector, GammaMonomial, GammaMultivector, Scalar};

#[test]
fn weyl_sign_matches_pseudoscalar_product() {
    for m in 1..=3 {
        let gamma = GammaMultivector::<Scalar>::blade(GammaMonomial::pseudoscalar(m).unwrap());
        for psi in EfbElement::all(m).unwrap() {
            let image = efb_element_to_gamma::<Scalar>(&psi);
            let lhs = gamma.gamma_product(&image).unwrap();
            let eps = weyl_sign(&psi);
            assert_eq!(lhs, image.scale(&Scalar::from(eps as i64)), "{psi}");
        }
    }
}

#[test]
fn null_plane_annihilates_its_element() {
    for m in 1..=3 {
        for psi in EfbElement::all(m).unwrap() {
            let element = EfbMultivector::<Scalar>::blade(psi);
            let vectors = tnp_of(&psi).vectors::<Scalar>().unwrap();
            assert_eq!(vectors.len(), m);
            for v in &vectors {
                assert!(v.efb_product(&element).unwrap().is_zero(), "{psi}");
            }
            for a in &vectors {
                for b in &vectors {
                    assert!(a.anticommutator(b).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn classes_share_the_plane_and_partition_the_basis() {
    for m in 1..=3 {
        let mut classes = BTreeSet::new();
        for psi in EfbElement::all(m).unwrap() {
            let class = tnp_class(&psi);
            assert_eq!(class.len(), 1 << m);
            assert!(class.contains(&psi));
            let plane = tnp_of(&psi);
            let vectors = plane.vectors::<Scalar>().unwrap();
            for member in &class {
                assert_eq!(tnp_of(member), plane);
                let element = EfbMultivector::<Scalar>::blade(*member);
                for v in &vectors {
                    assert!(v.efb_product(&element).unwrap().is_zero());
                }
            }
            classes.insert(class);
        }
        assert_eq!(classes.len(), 1 << m);
        let union: BTreeSet<_> = classes.iter().flatten().copied().collect();
        assert_eq!(union.len(), 1 << (2 * m));
    }
}
