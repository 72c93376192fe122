//! The reticulation as a distributive-lattice quotient: frozen small cases,
//! the power-domination preorder it quotients by, its universal property,
//! and its compatibility with localization.

mod common;

use common::*;
use proptest::prelude::*;
use rigrep::generate::{
    boolean, chain, lattice_catalog, lukasiewicz, random_integral_rig, two, v_lattice,
};
use rigrep::hom::enumerate_homs;
use rigrep::reticulation::{
    power_leq_witness, retic_localization_compat, reticulate, reticulate_morphism,
    verify_reticulation_universal,
};
use rigrep::FiniteRig;

#[test]
fn lukasiewicz_chains_reticulate_to_two() {
    // Every proper element of Ln is nilpotent, so they all collapse onto 0.
    for n in 2..=6 {
        let r = reticulate(&lukasiewicz(n)).unwrap();
        assert_eq!(r.lattice.size(), 2);
        let mut expected = vec![0; n - 1];
        expected.push(1);
        assert_eq!(r.unit.map(), &expected);
    }
}

#[test]
fn lattices_are_their_own_reticulation() {
    for l in lattice_catalog() {
        let r = reticulate(&l).unwrap();
        assert!(
            r.unit.is_bijective(),
            "{} should reticulate to itself",
            l.name()
        );
        assert_eq!(r.lattice.size(), l.size());
    }
}

#[test]
fn a_mixed_product_reticulates_componentwise() {
    // L3 contributes a two-element factor, C3 survives unchanged.
    let (p, _, _) = FiniteRig::product(&lukasiewicz(3), &chain(3));
    let r = reticulate(&p).unwrap();
    assert_eq!(r.lattice.size(), 6);
    let (expected, _, _) = FiniteRig::product(&two(), &chain(3));
    let isos = enumerate_homs(&r.lattice, &expected)
        .into_iter()
        .filter(|h| h.is_bijective())
        .count();
    assert!(isos > 0, "L(L3 x C3) must be isomorphic to 2 x C3");
}

#[test]
fn the_unit_is_a_surjective_local_morphism_on_the_whole_catalog() {
    for rig in catalog() {
        let r = reticulate(rig).unwrap();
        assert!(r.unit.is_surjective(), "unit not onto for {}", rig.name());
        assert!(
            r.unit.is_local(),
            "unit fails to reflect invertibility for {}",
            rig.name()
        );
        assert!(r.lattice.is_distributive_lattice());
    }
}

#[test]
fn the_unit_identifies_exactly_mutual_power_domination() {
    // x and y share a class iff each has a power below the other.
    for rig in catalog_le(9) {
        let r = reticulate(rig).unwrap();
        for x in rig.elements() {
            for y in rig.elements() {
                let mutual = power_leq_witness(rig, x, y).is_some()
                    && power_leq_witness(rig, y, x).is_some();
                assert_eq!(
                    r.unit.apply(x) == r.unit.apply(y),
                    mutual,
                    "class mismatch at ({}, {}) in {}",
                    rig.label(x),
                    rig.label(y),
                    rig.name()
                );
            }
        }
    }
}

#[test]
fn power_witnesses_are_minimal_and_sound() {
    for rig in catalog_le(9) {
        for x in rig.elements() {
            for y in rig.elements() {
                match power_leq_witness(rig, x, y) {
                    Some(m) => {
                        assert!(oracle_leq(rig, rig.power(x, m), y));
                        for k in 1..m {
                            assert!(!oracle_leq(rig, rig.power(x, k), y));
                        }
                    }
                    None => {
                        // No power works up to the cycle bound, so none ever will.
                        for k in 1..=rig.size() + 1 {
                            assert!(!oracle_leq(rig, rig.power(x, k), y));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn universal_property_against_the_small_lattices() {
    let lattices = [two(), chain(3), boolean(2), v_lattice()];
    for rig in catalog_le(6) {
        let retic = reticulate(rig).unwrap();
        for l in &lattices {
            assert!(
                verify_reticulation_universal(&retic, l).unwrap(),
                "universal property fails for {} against {}",
                rig.name(),
                l.name()
            );
        }
    }
}

#[test]
fn reticulation_commutes_with_localization_on_small_rigs() {
    for rig in catalog_le(8) {
        let r = reticulate(rig).unwrap();
        for x in rig.elements() {
            let iso = retic_localization_compat(&r, x).unwrap();
            assert!(
                iso.is_bijective(),
                "comparison not iso at {} in {}",
                rig.label(x),
                rig.name()
            );
        }
    }
}

#[test]
fn reticulation_is_functorial_on_projections() {
    let (p, fst, snd) = FiniteRig::product(&lukasiewicz(3), &chain(3));
    let lp = reticulate(&p).unwrap();
    for proj in [fst, snd] {
        let lh = reticulate_morphism(&proj).unwrap();
        let target = reticulate(proj.cod()).unwrap();
        // The square unit . L(h) = h . unit commutes by construction.
        assert_eq!(
            lp.unit.then(&lh).unwrap().map(),
            proj.then(&target.unit).unwrap().map()
        );
    }
}

#[test]
fn reticulation_preserves_identities() {
    for rig in catalog_le(9) {
        let id = rigrep::RigMorphism::identity(rig);
        let lid = reticulate_morphism(&id).unwrap();
        assert!(lid.is_bijective());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_reticulations_are_lattice_quotients_compatible_with_localization(
        size in 2usize..=5,
        seed in 0u64..4000,
    ) {
        let rig = random_integral_rig(size, seed).unwrap();
        let r = reticulate(&rig).unwrap();
        prop_assert!(r.unit.is_surjective());
        prop_assert!(r.unit.is_local());
        prop_assert!(r.lattice.is_distributive_lattice());
        for x in rig.elements() {
            prop_assert!(retic_localization_compat(&r, x).unwrap().is_bijective());
        }
    }
}
