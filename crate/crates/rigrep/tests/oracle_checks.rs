//! Search code vs brute force: the hom enumeration, congruence closure,
//! ideal closure, and residual construction all get compared against the
//! unpruned oracles in `common`.

mod common;

use common::*;
use rigrep::congruence::Congruence;
use rigrep::generate::{boolean, chain, lambda_lattice, lukasiewicz, two, v_lattice};
use rigrep::hom::enumerate_homs;
use rigrep::mv::{ideals, mv_from_rig, prime_ideals};
use rigrep::residuated::residuals;
use rigrep::spectrum::join_irreducibles;
use rigrep::FiniteRig;

fn hom_maps(a: &FiniteRig, b: &FiniteRig) -> Vec<Vec<usize>> {
    enumerate_homs(a, b)
        .iter()
        .map(|h| h.map().to_vec())
        .collect()
}

#[test]
fn hom_search_agrees_with_exhaustive_filtering() {
    let pairs: Vec<(FiniteRig, FiniteRig)> = vec![
        (two(), two()),
        (chain(3), two()),
        (chain(4), chain(3)),
        (lukasiewicz(3), chain(3)),
        (lukasiewicz(4), lukasiewicz(4)),
        (chain(5), chain(3)),
        (boolean(2), boolean(2)),
        (boolean(3), two()),
        (v_lattice(), lambda_lattice()),
        (lambda_lattice(), v_lattice()),
        (FiniteRig::product(&two(), &chain(3)).0, two()),
        (FiniteRig::product(&chain(3), &chain(4)).0, two()),
        (lukasiewicz(6), two()),
    ];
    for (a, b) in &pairs {
        assert_eq!(
            hom_maps(a, b),
            oracle_homs(a, b),
            "hom mismatch for {} -> {}",
            a.name(),
            b.name()
        );
    }
}

#[test]
fn hom_search_is_sorted_and_duplicate_free() {
    let a = boolean(2);
    let maps = hom_maps(&a, &a);
    let mut sorted = maps.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(maps, sorted);
}

#[test]
fn congruence_validation_agrees_with_partition_filtering() {
    let rigs = vec![
        two(),
        chain(3),
        chain(4),
        lukasiewicz(3),
        lukasiewicz(4),
        boolean(2),
        FiniteRig::product(&two(), &two()).0,
        FiniteRig::product(&two(), &chain(3)).0,
    ];
    for rig in &rigs {
        for p in all_partitions(rig.size()) {
            let accepted = Congruence::new(rig, p.clone()).is_ok();
            assert_eq!(
                accepted,
                is_congruence_map(rig, &p),
                "partition {:?} of {} judged differently",
                p,
                rig.name()
            );
        }
    }
}

#[test]
fn congruence_counts_on_known_rigs() {
    // C3 admits exactly the identity, the collapse of {0,c1}, the collapse
    // of {c1,1}, and the total congruence; {0,1} alone cannot merge.
    assert_eq!(oracle_congruences(&chain(3)).len(), 4);
    // An n-chain lattice has congruences = ways to cut it into intervals.
    assert_eq!(oracle_congruences(&chain(4)).len(), 8);
    assert_eq!(oracle_congruences(&two()).len(), 2);
}

#[test]
fn closure_from_pairs_reproduces_each_congruence() {
    let rigs = vec![chain(4), lukasiewicz(4), boolean(2)];
    for rig in &rigs {
        for class_of in oracle_congruences(rig) {
            let pairs: Vec<(usize, usize)> = rig
                .elements()
                .map(|x| (x, class_of[x]))
                .filter(|&(x, r)| x != r)
                .collect();
            let cong = Congruence::from_pairs(rig, &pairs).unwrap();
            assert_eq!(cong.class_of(), &class_of[..], "closure drifted on {}", rig.name());
        }
    }
}

#[test]
fn generated_closure_collapses_a_boolean_and_its_complement() {
    // Forcing (1,0) ~ (1,1) in 2x2 multiplies through to (0,0) ~ (0,1).
    let (p, _, _) = FiniteRig::product(&two(), &two());
    let cong = Congruence::from_pairs(&p, &[(2, 3)]).unwrap();
    assert_eq!(cong.class_of(), &[0, 0, 2, 2]);
}

#[test]
fn generated_closure_collapses_l3_when_a_nilpotent_turns_invertible() {
    // h ~ 1 squares to h^2 = 0 ~ 1, so the whole rig collapses.
    let cong = Congruence::from_pairs(&lukasiewicz(3), &[(1, 2)]).unwrap();
    assert_eq!(cong.class_of(), &[0, 0, 0]);
}

#[test]
fn kernels_of_enumerated_homs_are_congruences() {
    let a = lukasiewicz(4);
    for target in [two(), chain(3), lukasiewicz(3)] {
        for h in enumerate_homs(&a, &target) {
            let k = Congruence::kernel(&h);
            assert!(is_congruence_map(&a, k.class_of()));
        }
    }
}

#[test]
fn ideal_closure_agrees_with_powerset_filtering() {
    let mut algebras = vec![
        mv_from_rig(&lukasiewicz(2)).unwrap(),
        mv_from_rig(&lukasiewicz(3)).unwrap(),
        mv_from_rig(&lukasiewicz(4)).unwrap(),
        mv_from_rig(&lukasiewicz(5)).unwrap(),
    ];
    for (a, b) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
        let (p, _, _) = FiniteRig::product(&lukasiewicz(a), &lukasiewicz(b));
        algebras.push(mv_from_rig(&p).unwrap());
    }
    for m in &algebras {
        let mut got = ideals(m);
        let mut want = oracle_ideals(m);
        got.sort();
        want.sort();
        assert_eq!(got, want, "ideal mismatch on {}", m.name());

        let mut got_p = prime_ideals(m);
        let mut want_p = oracle_prime_ideals(m);
        got_p.sort();
        want_p.sort();
        assert_eq!(got_p, want_p, "prime ideal mismatch on {}", m.name());
    }
}

#[test]
fn join_irreducibles_agree_with_direct_scan() {
    for lattice in rigrep::generate::lattice_catalog() {
        assert_eq!(
            join_irreducibles(&lattice),
            oracle_join_irreducibles(&lattice),
            "irreducibles mismatch on {}",
            lattice.name()
        );
    }
}

#[test]
fn residual_tables_satisfy_the_adjunction_against_oracle_order() {
    for rig in catalog_le(8) {
        let table = residuals(rig).unwrap();
        for a in rig.elements() {
            for b in rig.elements() {
                let r = table.imp(a, b);
                for c in rig.elements() {
                    assert_eq!(
                        oracle_leq(rig, rig.mul(a, c), b),
                        oracle_leq(rig, c, r),
                        "adjunction fails in {} at ({a},{b},{c})",
                        rig.name()
                    );
                }
            }
        }
    }
}
