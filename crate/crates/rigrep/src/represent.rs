//! The representing sheaf of an integral rig over its reticulation lattice.
//!
//! Each lattice element gets the localization of the source at a preimage
//! under the reticulation unit; comparable elements are connected by the
//! factorizations between those localizations. The construction re-verifies
//! what makes it a representation: the gluing condition over binary joins,
//! a trivial bottom fiber, really local fibers at the join-irreducibles,
//! and a bijective unit into the top fiber. Support maps, stalks, global
//! sections over the points, the subdirect embedding, and the action on
//! morphisms all live here too.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hom::{factor_through, induced_iso};
use crate::localization::{localize, localize_at};
use crate::presheaf::{downset_presheaf, Base, PresheafOfRigs, Sections};
use crate::reticulation::{reticulate, reticulate_morphism, Reticulation};
use crate::rig::{FiniteRig, RigMorphism};
use crate::spectrum::{join_irreducibles, spectrum, SpectrumPoint};

/// An integral rig presented as a sheaf of localizations over its
/// reticulation lattice.
#[derive(Debug, Clone)]
pub struct Representation {
    pub source: FiniteRig,
    pub retic: Reticulation,
    /// Fiber at `d` is the source localized at a preimage of `d`.
    pub sheaf: PresheafOfRigs,
    /// The localization map `source -> fiber(d)`, per lattice element.
    pub units: Vec<RigMorphism>,
    /// Join-irreducibles of the reticulation lattice.
    pub irr: Vec<usize>,
    /// `source -> fiber(top)`; bijective because only `1` sits over the top.
    pub unit_iso: RigMorphism,
}

impl Representation {
    pub fn lattice(&self) -> &FiniteRig {
        &self.retic.lattice
    }

    pub fn fiber(&self, d: usize) -> &FiniteRig {
        self.sheaf.fiber(d)
    }

    /// The sheaf cut down to the poset of join-irreducibles.
    pub fn irreducible_sheaf(&self) -> PresheafOfRigs {
        self.sheaf
            .restrict_to_poset(&self.irr)
            .expect("join-irreducibles inherit the lattice order")
    }
}

/// Localize the source at one least-index preimage per lattice element and
/// connect comparable elements by factorization. All representation
/// invariants are re-verified.
pub fn build_representation(rig: &FiniteRig) -> Result<Representation> {
    if rig.is_trivial() {
        return Err(Error::TrivialSource {
            name: rig.name().to_string(),
        });
    }
    let retic = reticulate(rig)?;
    let lattice = retic.lattice.clone();
    let m = lattice.size();
    let mut fibers = Vec::with_capacity(m);
    let mut units = Vec::with_capacity(m);
    for d in lattice.elements() {
        let x = retic
            .unit
            .least_preimage(d)
            .expect("the reticulation unit is surjective");
        let (fiber, unit) = localize_at(rig, x)?;
        fibers.push(fiber);
        units.push(unit);
    }
    let leq = lattice.leq_table();
    let mut restrict = BTreeMap::new();
    for upper in lattice.elements() {
        for lower in lattice.elements() {
            if upper != lower && leq[lower * m + upper] {
                let r = factor_through(&units[upper], &units[lower]).expect(
                    "a localization below inverts more, so it factors through the one above",
                );
                restrict.insert((upper, lower), r);
            }
        }
    }
    let sheaf = PresheafOfRigs::new(Base::Lattice(lattice.clone()), fibers, restrict)
        .expect("factorizations of a common quotient are functorial");
    assert!(
        sheaf.is_sheaf().expect("the base is a lattice"),
        "localizations glue along binary joins"
    );
    assert!(
        sheaf.fiber(lattice.zero()).is_trivial(),
        "the bottom fiber inverts a nilpotent, so it collapses"
    );
    let irr = join_irreducibles(&lattice);
    for &l in &irr {
        assert!(
            sheaf.fiber(l).is_really_local(),
            "fibers at join-irreducibles are really local"
        );
    }
    let unit_iso = units[lattice.one()].clone();
    assert!(
        unit_iso.is_bijective(),
        "only 1 maps to the top, so the top fiber is the source itself"
    );
    Ok(Representation {
        source: rig.clone(),
        retic,
        sheaf,
        units,
        irr,
        unit_iso,
    })
}

/// The largest `c <= l` where `e` restricts to `1`. The bottom always
/// qualifies; an error means the qualifying elements have no join among
/// them, which a valid representation rules out.
pub fn support(rep: &Representation, l: usize, e: usize) -> Result<usize> {
    let lattice = rep.lattice();
    let n = lattice.size();
    let leq = lattice.leq_table();
    let qualifying: Vec<usize> = lattice
        .elements()
        .filter(|&c| {
            leq[c * n + l] && rep.sheaf.restriction(l, c).apply(e) == rep.fiber(c).one()
        })
        .collect();
    let join = qualifying
        .iter()
        .fold(lattice.zero(), |acc, &c| lattice.add(acc, c));
    if qualifying.contains(&join) {
        Ok(join)
    } else {
        Err(Error::NoLargestWitness {
            at: lattice.label(l).to_string(),
            element: rep.fiber(l).label(e).to_string(),
        })
    }
}

/// The support maps of a representation, bundled against the down-set
/// presheaf of its lattice.
#[derive(Debug, Clone)]
pub struct SupportMap {
    pub lambda: PresheafOfRigs,
    /// Per lattice element `d`, the morphism `fiber(d) -> down-set of d`,
    /// indexing the down-set as the lambda fiber does.
    pub chi: Vec<RigMorphism>,
}

/// Collect the support of every fiber element and re-verify that the
/// family is a morphism of presheaves into the down-sets and local in
/// every fiber.
pub fn support_map(rep: &Representation) -> Result<SupportMap> {
    let lattice = rep.lattice();
    let lambda = downset_presheaf(lattice).expect("the reticulation is a lattice");
    let n = lattice.size();
    let mut chi = Vec::with_capacity(n);
    for d in lattice.elements() {
        let (_, proj) = lattice
            .restrict_below(d)
            .expect("lattice elements are strongly idempotent");
        let mut map = Vec::with_capacity(rep.fiber(d).size());
        for e in rep.fiber(d).elements() {
            map.push(proj.apply(support(rep, d, e)?));
        }
        let morphism = RigMorphism::new(rep.fiber(d), lambda.fiber(d), map)
            .expect("support respects the rig operations");
        assert!(morphism.is_local(), "support reflects invertibility");
        chi.push(morphism);
    }
    let leq = lattice.leq_table();
    for upper in lattice.elements() {
        for lower in lattice.elements() {
            if upper == lower || !leq[lower * n + upper] {
                continue;
            }
            let via_sheaf = rep
                .sheaf
                .restriction(upper, lower)
                .then(&chi[lower])
                .expect("fibers line up");
            let via_lambda = chi[upper]
                .then(lambda.restriction(upper, lower))
                .expect("fibers line up");
            assert_eq!(
                via_sheaf.map(),
                via_lambda.map(),
                "support commutes with restriction"
            );
        }
    }
    Ok(SupportMap { lambda, chi })
}

/// Per lattice element, the isomorphism matching the fiber's own
/// reticulation with its support map onto the down-set.
pub fn support_reticulation_isos(
    rep: &Representation,
    support: &SupportMap,
) -> Result<Vec<RigMorphism>> {
    rep.lattice()
        .elements()
        .map(|d| {
            let fiber_retic = reticulate(rep.fiber(d))?;
            induced_iso(&fiber_retic.unit, &support.chi[d])
        })
        .collect()
}

/// The localization of `rig` at a point's filter, with its universal map.
pub fn stalk(rig: &FiniteRig, point: &SpectrumPoint) -> Result<(FiniteRig, RigMorphism)> {
    if point.rig() != rig {
        return Err(Error::Shape(
            "the point belongs to a different rig".into(),
        ));
    }
    localize(rig, &point.filter)
}

/// The embedding of a rig into the product of its stalks, held
/// componentwise: the full product is only materialized on request.
#[derive(Debug, Clone)]
pub struct SubdirectEmbedding {
    pub source: FiniteRig,
    pub points: Vec<SpectrumPoint>,
    pub stalks: Vec<FiniteRig>,
    /// The universal map into each stalk.
    pub components: Vec<RigMorphism>,
    /// Image tuple per source element, one stalk value per point.
    pub tuples: Vec<Vec<usize>>,
}

impl SubdirectEmbedding {
    /// Distinct elements keep distinct tuples.
    pub fn is_injective(&self) -> bool {
        let mut sorted = self.tuples.clone();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Every component map is onto its stalk, which is what makes the
    /// embedding subdirect.
    pub fn components_surjective(&self) -> bool {
        self.components.iter().all(|c| c.is_surjective())
    }

    pub fn stalks_really_local(&self) -> bool {
        self.stalks.iter().all(|s| s.is_really_local())
    }

    /// Build the literal product rig and the tuple morphism into it, or
    /// `None` when the product would exceed `max_elements`. The stalks of a
    /// rig can multiply out to far more cells than the rig itself has, so
    /// callers opt in to the blowup.
    pub fn product_morphism(&self, max_elements: usize) -> Option<(FiniteRig, RigMorphism)> {
        let sizes: Vec<usize> = self.stalks.iter().map(|s| s.size()).collect();
        let mut total: usize = 1;
        for &s in &sizes {
            total = total.checked_mul(s)?;
            if total > max_elements {
                return None;
            }
        }
        let decode = |mut i: usize| -> Vec<usize> {
            let mut t = vec![0; sizes.len()];
            for k in (0..sizes.len()).rev() {
                t[k] = i % sizes[k];
                i /= sizes[k];
            }
            t
        };
        let encode = |t: &[usize]| -> usize {
            t.iter().zip(&sizes).fold(0, |acc, (&v, &s)| acc * s + v)
        };
        let labels: Vec<String> = (0..total)
            .map(|i| {
                let t = decode(i);
                let parts: Vec<&str> = t
                    .iter()
                    .enumerate()
                    .map(|(k, &v)| self.stalks[k].label(v))
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let componentwise = |i: usize, j: usize, mul: bool| -> usize {
            let (s, t) = (decode(i), decode(j));
            let r: Vec<usize> = (0..sizes.len())
                .map(|k| {
                    if mul {
                        self.stalks[k].mul(s[k], t[k])
                    } else {
                        self.stalks[k].add(s[k], t[k])
                    }
                })
                .collect();
            encode(&r)
        };
        let zero = encode(&self.stalks.iter().map(|s| s.zero()).collect::<Vec<_>>());
        let one = encode(&self.stalks.iter().map(|s| s.one()).collect::<Vec<_>>());
        let product = FiniteRig::from_fn(
            format!("{} stalk product", self.source.name()),
            labels,
            |i, j| componentwise(i, j, false),
            |i, j| componentwise(i, j, true),
            zero,
            one,
        )
        .expect("a finite product of rigs is a rig");
        let map: Vec<usize> = self.tuples.iter().map(|t| encode(t)).collect();
        let morphism = RigMorphism::new(&self.source, &product, map)
            .expect("the tuple of morphisms is a morphism");
        Some((product, morphism))
    }
}

/// Localize at every point's filter and record each element's image tuple.
pub fn subdirect_embedding(rig: &FiniteRig) -> Result<SubdirectEmbedding> {
    if rig.is_trivial() {
        return Err(Error::TrivialSource {
            name: rig.name().to_string(),
        });
    }
    rig.require_integral()?;
    let points = spectrum(rig);
    let mut stalks = Vec::with_capacity(points.len());
    let mut components = Vec::with_capacity(points.len());
    for p in &points {
        let (s, u) = localize(rig, &p.filter)?;
        stalks.push(s);
        components.push(u);
    }
    let tuples: Vec<Vec<usize>> = rig
        .elements()
        .map(|x| components.iter().map(|u| u.apply(x)).collect())
        .collect();
    Ok(SubdirectEmbedding {
        source: rig.clone(),
        points,
        stalks,
        components,
        tuples,
    })
}

/// A rig morphism carried over to the representations of its endpoints.
#[derive(Debug, Clone)]
pub struct RepresentationMorphism {
    /// The induced map between the reticulation lattices.
    pub lattice_map: RigMorphism,
    /// The target sheaf pulled back along `lattice_map`.
    pub pulled: PresheafOfRigs,
    /// Per source-lattice element `c`, the induced `fiber(c) -> pulled
    /// fiber(c)`.
    pub fiber_maps: Vec<RigMorphism>,
}

/// Induce fiber maps from `h` by the universal property of localization
/// and re-verify naturality and compatibility with both support maps.
pub fn represent_morphism(
    ra: &Representation,
    rb: &Representation,
    h: &RigMorphism,
) -> Result<RepresentationMorphism> {
    if h.dom() != &ra.source || h.cod() != &rb.source {
        return Err(Error::Shape(
            "the morphism does not connect the represented rigs".into(),
        ));
    }
    let lattice_map = reticulate_morphism(h)?;
    let pulled = rb.sheaf.precompose(&lattice_map)?;
    let n = ra.lattice().size();
    let mut fiber_maps = Vec::with_capacity(n);
    for c in ra.lattice().elements() {
        let into_target_fiber = h.then(&rb.units[lattice_map.apply(c)])?;
        fiber_maps.push(factor_through(&ra.units[c], &into_target_fiber)?);
    }
    let leq = ra.lattice().leq_table();
    for upper in 0..n {
        for lower in 0..n {
            if upper == lower || !leq[lower * n + upper] {
                continue;
            }
            let via_source = ra
                .sheaf
                .restriction(upper, lower)
                .then(&fiber_maps[lower])
                .expect("fibers line up");
            let via_target = fiber_maps[upper]
                .then(pulled.restriction(upper, lower))
                .expect("fibers line up");
            assert_eq!(
                via_source.map(),
                via_target.map(),
                "fiber maps commute with restriction"
            );
        }
    }
    for c in ra.lattice().elements() {
        for e in ra.fiber(c).elements() {
            let through_source = lattice_map.apply(support(ra, c, e)?);
            let through_target = support(rb, lattice_map.apply(c), fiber_maps[c].apply(e))?;
            assert_eq!(
                through_source, through_target,
                "support squares with the lattice map"
            );
        }
    }
    Ok(RepresentationMorphism {
        lattice_map,
        pulled,
        fiber_maps,
    })
}

/// The source rig against the compatible families over its
/// join-irreducibles: the reconstruction direction of the representation.
pub fn unit_section_iso(rep: &Representation) -> (Sections, RigMorphism) {
    let sections = rep.irreducible_sheaf().global_sections();
    let map: Vec<usize> = rep
        .source
        .elements()
        .map(|a| {
            let family: Vec<usize> = rep.irr.iter().map(|&l| rep.units[l].apply(a)).collect();
            sections
                .index_of(&family)
                .expect("unit images form a compatible family")
        })
        .collect();
    let iso = RigMorphism::new(&rep.source, &sections.rig, map)
        .expect("the family-of-units map is a morphism");
    assert!(
        iso.is_bijective(),
        "compatible families over the points reconstruct the rig"
    );
    (sections, iso)
}
