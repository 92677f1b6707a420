mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use efb_core::bench::{complexity_lower_bound, count_table_nonzeros, dense_efb, dense_gamma};
use efb_core::efb::{efb_basis_product, slot_product, EfbSymbol::*};
use efb_core::graph::*;
use efb_core::spinor::{tnp_of, weyl_sign};
use efb_core::transform::*;
use efb_core::{
    EfbElement, EfbMultivector, GammaMonomial, GammaMultivector, Graph, MulCounter, Scalar, Signature,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, name: &str, limit: Duration, run: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| {
        if elapsed < limit {
            Ok(())
        } else {
            Err(format!("took {elapsed:?}, limit {limit:?}"))
        }
    });
    match &outcome {
        Ok(()) => println!("[PASS] AC{id} {name} ({elapsed:.2?})"),
        Err(why) => println!("[FAIL] AC{id} {name} ({elapsed:.2?}): {why}"),
    }
    if let Err(why) = outcome {
        panic!("AC{id} failed: {why}");
    }
}

fn check(condition: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

fn gamma_of(e: &EfbElement) -> GammaMultivector {
    efb_element_to_gamma::<Scalar>(e)
}

#[test]
fn ac1_slot_table() {
    report(1, "slot product table", Duration::from_secs(1), || {
        let order = [QP, PQ, P, Q];
        let expected = [
            [Some(QP), None, None, Some(Q)],
            [None, Some(PQ), Some(P), None],
            [Some(P), None, None, Some(PQ)],
            [None, Some(Q), Some(QP), None],
        ];
        let mut zeros = 0;
        for (r, a) in order.iter().enumerate() {
            for (c, b) in order.iter().enumerate() {
                let got = slot_product(*a, *b);
                check(got == expected[r][c], || format!("{a:?}·{b:?} = {got:?}"))?;
                zeros += got.is_none() as usize;
            }
        }
        check(zeros == 8, || format!("{zeros} zeros"))
    });
}

#[test]
fn ac2_matrix_identities() {
    report(2, "Hadamard and permutation matrices", Duration::from_secs(10), || {
        for m in 1..=4 {
            let h = full_hadamard(m).map_err(|e| e.to_string())?;
            check(h.is_symmetric(), || format!("H not symmetric at m = {m}"))?;
            let hh = h.matmul(&h).map_err(|e| e.to_string())?;
            check(hh.is_scaled_identity(1 << m), || format!("HH != 2^m I at m = {m}"))?;
            let p = perm(m).map_err(|e| e.to_string())?;
            check(p.is_permutation(), || format!("P_{m} is not a permutation"))?;
        }
        let expected = [
            "1", "g3 g4", "g1 g2", "g1 g2 g3 g4", "g3", "g4", "g1 g2 g3", "g1 g2 g4", "g1", "g1 g3 g4", "g2",
            "g2 g3 g4", "g1 g3", "g1 g4", "g2 g3", "g2 g4",
        ];
        let got: Vec<String> = permuted_gamma_basis(2)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|g| g.to_string())
            .collect();
        check(got == expected, || format!("m = 2 ordering {got:?}"))
    });
}

#[test]
fn ac3_oracle_equivalence() {
    report(3, "EFB product equals gamma oracle", Duration::from_secs(60), || {
        for m in 1..=3 {
            let basis: Vec<EfbElement> = EfbElement::all(m).unwrap().collect();
            let images: Vec<GammaMultivector> = basis.iter().map(gamma_of).collect();
            for (a, ga) in basis.iter().zip(&images) {
                for (b, gb) in basis.iter().zip(&images) {
                    let oracle = ga.gamma_product(gb).unwrap();
                    let efb = EfbMultivector::blade(*a).efb_product(&EfbMultivector::blade(*b)).unwrap();
                    check(efb_to_gamma(&efb).unwrap() == oracle, || format!("{a} * {b}"))?;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for n in 0..500 {
            let a = common::sparse_efb(4, 8, &mut rng);
            let b = common::sparse_efb(4, 8, &mut rng);
            let via_efb = efb_to_gamma(&a.efb_product(&b).unwrap()).unwrap();
            let oracle = efb_to_gamma(&a)
                .unwrap()
                .gamma_product(&efb_to_gamma(&b).unwrap())
                .unwrap();
            check(via_efb == oracle, || format!("random pair {n} at m = 4"))?;
        }
        Ok(())
    });
}

#[test]
fn ac4_partners_idempotents_nilpotents() {
    report(4, "unique partners, idempotents, nilpotents", Duration::from_secs(30), || {
        for m in 1..=3 {
            let basis: Vec<EfbElement> = EfbElement::all(m).unwrap().collect();
            for psi in &basis {
                for r in Signature::all(m).unwrap() {
                    let survivors = EfbElement::with_signature(r)
                        .filter(|phi| efb_basis_product(psi, phi).unwrap().is_some())
                        .count();
                    check(survivors == 1, || format!("{psi} has {survivors} partners in {r:?}"))?;
                }
                let partners = basis.iter().filter(|phi| psi.product(phi).is_some()).count();
                check(partners == 1 << m, || format!("{psi} has {partners} partners"))?;
            }
            let mut idempotents = BTreeSet::new();
            let mut nilpotents = 0usize;
            for psi in &basis {
                match efb_basis_product(psi, psi).unwrap() {
                    Some((1, sq)) if sq == *psi => {
                        idempotents.insert(*psi);
                    }
                    None => nilpotents += 1,
                    other => return Err(format!("{psi}² = {other:?}")),
                }
            }
            let expected: BTreeSet<_> = EfbElement::with_signature(Signature::all_even(m).unwrap()).collect();
            check(idempotents == expected, || format!("idempotents at m = {m}"))?;
            check(nilpotents == (1 << m) * ((1 << m) - 1), || format!("{nilpotents} nilpotents"))?;
            for a in &idempotents {
                for b in &idempotents {
                    let ab = efb_basis_product(a, b).unwrap();
                    check(ab == efb_basis_product(b, a).unwrap(), || format!("{a} and {b} do not commute"))?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn ac5_weyl_and_null_planes() {
    report(5, "pseudoscalar eigenvalue and TNP annihilation", Duration::from_secs(30), || {
        for m in 1..=3 {
            let gamma = GammaMultivector::<Scalar>::blade(GammaMonomial::pseudoscalar(m).unwrap());
            for psi in EfbElement::all(m).unwrap() {
                let image = gamma_of(&psi);
                let lhs = gamma.gamma_product(&image).unwrap();
                let plus = lhs == image;
                let minus = lhs == image.neg();
                check(plus || minus, || format!("Γ{psi} is not ±{psi}"))?;
                check(plus == (weyl_sign(&psi) == 1), || format!("weyl_sign({psi})"))?;
                let element = EfbMultivector::<Scalar>::blade(psi);
                for v in tnp_of(&psi).vectors::<Scalar>().unwrap() {
                    check(v.efb_product(&element).unwrap().is_zero(), || format!("{v} does not annihilate {psi}"))?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn ac6_complexity_counts() {
    report(6, "multiplication counts", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for (m, table) in [(1, 8), (2, 64), (3, 512), (4, 4096)] {
            let nonzero = count_table_nonzeros(m).map_err(|e| e.to_string())?;
            check(nonzero == table, || format!("table nonzeros {nonzero} at m = {m}"))?;

            let a: EfbMultivector = dense_efb(m, &mut rng).unwrap();
            let b: EfbMultivector = dense_efb(m, &mut rng).unwrap();
            let mut efb = MulCounter::enabled();
            let product = a.efb_product_with(&b, &mut efb).unwrap();
            let direct = efb_to_gamma(&a)
                .unwrap()
                .gamma_product(&efb_to_gamma(&b).unwrap())
                .unwrap();
            check(efb_to_gamma(&product).unwrap() == direct, || format!("products differ at m = {m}"))?;

            let ga: GammaMultivector = dense_gamma(m, &mut rng).unwrap();
            let gb: GammaMultivector = dense_gamma(m, &mut rng).unwrap();
            let mut gamma = MulCounter::enabled();
            let direct = ga.gamma_product_with(&gb, &mut gamma).unwrap();
            let via_efb = gamma_to_efb(&ga).unwrap().efb_product(&gamma_to_efb(&gb).unwrap()).unwrap();
            check(gamma_to_efb(&direct).unwrap() == via_efb, || format!("products differ at m = {m}"))?;

            check(efb.count() == 1 << (3 * m), || format!("EFB count {} at m = {m}", efb.count()))?;
            check(gamma.count() == 1 << (4 * m), || format!("gamma count {} at m = {m}", gamma.count()))?;
            let bound = complexity_lower_bound(m);
            check(efb.count() > bound && gamma.count() > bound, || format!("lower bound {bound} at m = {m}"))?;
        }
        Ok(())
    });
}

fn independence_matches(g: &Graph) -> Result<(), String> {
    let oracle = brute_force_mis(g, DEFAULT_ORACLE_LIMIT).unwrap();
    let (alpha, power) = independence_number_with_power(g).unwrap();
    check(alpha == oracle, || format!("α = {alpha}, oracle {oracle}, {g:?}"))?;
    let sets = extract_independent_sets(&power);
    let expected = enumerate_independent_sets(g, alpha, DEFAULT_ORACLE_LIMIT).unwrap();
    check(sets == expected, || format!("maximum sets differ for {g:?}"))
}

#[test]
fn ac7_independence_number() {
    report(7, "independence number via O^k", Duration::from_secs(300), || {
        let mut graphs = 0;
        for m in 1..=5usize {
            let pairs = m * (m - 1) / 2;
            for mask in 0..1u64 << pairs {
                independence_matches(&Graph::from_edge_mask(m, mask).unwrap())?;
                graphs += 1;
            }
        }
        check(graphs == 1 + 2 + 8 + 64 + 1024, || format!("{graphs} exhaustive graphs"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = rng.gen_range(1..=10);
            let p = rng.gen_range(0.1..0.9);
            independence_matches(&Graph::random(m, p, &mut rng).unwrap())?;
        }
        Ok(())
    });
}

#[test]
fn ac8_single_term_powers() {
    report(8, "unique maximum set and maximal sets give single terms", Duration::from_secs(60), || {
        for m in 1..=6 {
            for k in 1..=m {
                // a unique maximum set of size 1 needs m = 1
                if k == 1 && m > 1 {
                    continue;
                }
                let g = unique_maximum_graph(m, k).unwrap();
                let power = o_power(&g, k).unwrap();
                let leading = leading_simple_spinor(m, k).unwrap();
                let single = power.len() == 1 && power.get(&leading).is_some();
                check(single, || format!("O^{k} at m = {m} is {power}"))?;
                for set in enumerate_maximal_sets(&g, DEFAULT_ORACLE_LIMIT).unwrap() {
                    check(maximal_term_is_simple(&g, &set).unwrap(), || format!("{set:?} in {g:?}"))?;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let m = rng.gen_range(1..=6);
            let g = Graph::random(m, rng.gen_range(0.1..0.9), &mut rng).unwrap();
            for set in enumerate_maximal_sets(&g, DEFAULT_ORACLE_LIMIT).unwrap() {
                check(maximal_term_is_simple(&g, &set).unwrap(), || format!("{set:?} in {g:?}"))?;
            }
        }
        Ok(())
    });
}

#[test]
fn ac9_witt_and_z_vectors() {
    report(9, "Witt relations and z-vector anticommutators", Duration::from_secs(30), || {
        for m in 1..=4 {
            let one = EfbMultivector::identity(m).unwrap();
            for i in 1..=m {
                for j in 1..=m {
                    let pi = witt_vector_efb::<Scalar>(NullKind::P, i, m).unwrap();
                    let qi = witt_vector_efb::<Scalar>(NullKind::Q, i, m).unwrap();
                    let pj = witt_vector_efb::<Scalar>(NullKind::P, j, m).unwrap();
                    let qj = witt_vector_efb::<Scalar>(NullKind::Q, j, m).unwrap();
                    let delta = if i == j { one.clone() } else { EfbMultivector::zero(m) };
                    check(pi.anticommutator(&qj).unwrap() == delta, || format!("{{p{i}, q{j}}}"))?;
                    check(pi.anticommutator(&pj).unwrap().is_zero(), || format!("{{p{i}, p{j}}}"))?;
                    check(qi.anticommutator(&qj).unwrap().is_zero(), || format!("{{q{i}, q{j}}}"))?;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let m = rng.gen_range(2..=6);
            let g = Graph::random(m, 0.5, &mut rng).unwrap();
            let one = EfbMultivector::identity(m).unwrap();
            let zs: Vec<_> = (1..=m).map(|i| z_vector(i, &g).unwrap()).collect();
            for i in 1..=m {
                for j in 1..=m {
                    let got = zs[i - 1].anticommutator(&zs[j - 1]).unwrap();
                    let stated = one.scale(&Scalar::from(g.adjacency(i, j) as i64));
                    check(got == stated, || {
                        format!("{{z{i}, z{j}}} = {got}, expected a_{i}{j}·1 = {stated} on {g:?}")
                    })?;
                }
            }
        }
        Ok(())
    });
}
