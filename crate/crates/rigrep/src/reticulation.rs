//! The reticulation: universal map from an integral rig to a distributive
//! lattice.
//!
//! Identify `x` and `y` when some power of each sits below the other in the
//! canonical order. The quotient kills exactly the difference between an
//! element and its square, so it is a distributive lattice, and every
//! morphism into a distributive lattice factors through it uniquely.

use crate::congruence::Congruence;
use crate::error::Result;
use crate::hom::{enumerate_homs, factor_through, induced_iso};
use crate::localization::localize_at;
use crate::rig::{FiniteRig, RigMorphism};
use std::collections::BTreeMap;

/// A rig together with its reticulation lattice and the unit onto it.
#[derive(Debug, Clone)]
pub struct Reticulation {
    pub source: FiniteRig,
    pub lattice: FiniteRig,
    /// Surjective and local: only `1` maps to the top.
    pub unit: RigMorphism,
}

/// Least `m >= 1` with `x^m <= y`, if any.
pub fn power_leq_witness(rig: &FiniteRig, x: usize, y: usize) -> Option<usize> {
    let leq = rig.leq_table();
    rig.powers(x)
        .into_iter()
        .position(|p| leq[p * rig.size() + y])
        .map(|i| i + 1)
}

fn power_preorder(rig: &FiniteRig) -> Vec<bool> {
    let n = rig.size();
    let leq = rig.leq_table();
    let mut rel = vec![false; n * n];
    for x in 0..n {
        for p in rig.powers(x) {
            for y in 0..n {
                if leq[p * n + y] {
                    rel[x * n + y] = true;
                }
            }
        }
    }
    rel
}

/// Quotient an integral rig by mutual power-domination and verify the
/// result is a distributive lattice with a surjective local unit.
pub fn reticulate(rig: &FiniteRig) -> Result<Reticulation> {
    rig.require_integral()?;
    let n = rig.size();
    let rel = power_preorder(rig);
    let class_of = (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| rel[x * n + y] && rel[y * n + x])
                .expect("x dominates itself")
        })
        .collect();
    let cong = Congruence::new(rig, class_of)?;
    let (lattice, unit) = cong.quotient()?;
    let lattice = lattice.renamed(format!("L({})", rig.name()));
    let unit = RigMorphism::new(rig, &lattice, unit.map().to_vec())?;
    lattice.require_lattice()?;
    assert!(unit.is_surjective(), "reticulation unit is a quotient map");
    assert!(
        unit.is_local(),
        "reticulation unit must reflect invertibility"
    );
    Ok(Reticulation {
        source: rig.clone(),
        lattice,
        unit,
    })
}

/// The lattice map induced on reticulations by a morphism of integral rigs.
/// Fails with `NoSuchFactorization` only on a broken reticulation, since
/// the composite to the target lattice always kills the unit's kernel.
pub fn reticulate_morphism(h: &RigMorphism) -> Result<RigMorphism> {
    let ra = reticulate(h.dom())?;
    let rb = reticulate(h.cod())?;
    factor_through(&ra.unit, &h.then(&rb.unit)?)
}

/// Check the universal property against one distributive lattice: every
/// morphism `source -> lattice` factors through the unit exactly once.
/// Takes the reticulation precomputed so a caller sweeping a catalog of
/// target lattices pays for it once.
pub fn verify_reticulation_universal(retic: &Reticulation, lattice: &FiniteRig) -> Result<bool> {
    lattice.require_lattice()?;
    let mut composites: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for g in enumerate_homs(&retic.lattice, lattice) {
        *composites
            .entry(retic.unit.then(&g)?.map().to_vec())
            .or_insert(0) += 1;
    }
    let homs = enumerate_homs(&retic.source, lattice);
    if homs.len() != composites.len() {
        return Ok(false);
    }
    Ok(homs
        .iter()
        .all(|h| composites.get(h.map()) == Some(&1)))
}

/// Reticulation commutes with localization: the canonical comparison
/// `L(A[x^-1]) -> (L A)[(unit x)^-1]` is an isomorphism making both
/// composites out of `A` agree. Takes the reticulation precomputed so a
/// caller sweeping every element pays for it once.
pub fn retic_localization_compat(retic: &Reticulation, x: usize) -> Result<RigMorphism> {
    let rig = &retic.source;
    let (_, u) = localize_at(rig, x)?;
    let retic_loc = reticulate(u.cod())?;
    let via_localization = u.then(&retic_loc.unit)?;
    let (_, v) = localize_at(&retic.lattice, retic.unit.apply(x))?;
    let via_reticulation = retic.unit.then(&v)?;
    let iso = induced_iso(&via_localization, &via_reticulation)?;
    assert!(
        via_localization.then(&iso)? == via_reticulation,
        "comparison must commute with the canonical maps"
    );
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::generate::{chain, lukasiewicz, saturating_naturals, trivial, two};

    #[test]
    fn l3_reticulates_to_two() {
        let r = reticulate(&lukasiewicz(3)).unwrap();
        assert_eq!(r.lattice.size(), 2);
        assert_eq!(r.unit.map(), &[0, 0, 1]);
    }

    #[test]
    fn a_lattice_is_its_own_reticulation() {
        let c3 = chain(3);
        let r = reticulate(&c3).unwrap();
        assert!(r.unit.is_bijective());
        assert_eq!(r.lattice, c3.renamed(r.lattice.name()));
    }

    #[test]
    fn trivial_rig_reticulates_to_itself() {
        let r = reticulate(&trivial()).unwrap();
        assert!(r.lattice.is_trivial());
    }

    #[test]
    fn non_integral_input_refused() {
        assert!(matches!(
            reticulate(&saturating_naturals(2)),
            Err(Error::NotIntegral { .. })
        ));
    }

    #[test]
    fn witness_powers_track_the_unit_kernel() {
        let l4 = lukasiewicz(4);
        let r = reticulate(&l4).unwrap();
        for x in l4.elements() {
            for y in l4.elements() {
                let same = r.unit.apply(x) == r.unit.apply(y);
                let both = power_leq_witness(&l4, x, y).is_some()
                    && power_leq_witness(&l4, y, x).is_some();
                assert_eq!(same, both, "x={x} y={y}");
            }
        }
    }

    #[test]
    fn universal_against_two_and_itself() {
        let retic = reticulate(&lukasiewicz(3)).unwrap();
        assert!(verify_reticulation_universal(&retic, &two()).unwrap());
        assert!(verify_reticulation_universal(&retic, &chain(3)).unwrap());
        assert!(matches!(
            verify_reticulation_universal(&retic, &lukasiewicz(3)),
            Err(Error::NotLattice { .. })
        ));
    }

    #[test]
    fn localization_compat_on_a_nilpotent() {
        let retic = reticulate(&lukasiewicz(3)).unwrap();
        let iso = retic_localization_compat(&retic, 1).unwrap();
        assert!(iso.dom().is_trivial() && iso.cod().is_trivial());
    }

    #[test]
    fn induced_lattice_map_of_a_unit() {
        let l3 = lukasiewicz(3);
        let r = reticulate(&l3).unwrap();
        let lh = reticulate_morphism(&r.unit).unwrap();
        assert!(lh.is_bijective());
    }
}
