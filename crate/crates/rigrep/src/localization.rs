//! Localization of integral rigs at multiplicative submonoids.
//!
//! Inverting a submonoid `F` of an integral rig is a quotient, not a ring
//! of fractions: `x` and `y` are identified when each divides into the
//! other through `F`, meaning `w * x <= y` for some `w` in `F` and vice
//! versa. The quotient map inverts every member of `F`, and it is initial
//! among morphisms doing so.

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::hom::{enumerate_homs, factor_through, induced_iso};
use crate::rig::{FiniteRig, RigMorphism};
use std::collections::BTreeMap;

/// The least multiplicative submonoid containing the generators, sorted.
pub fn submonoid_closure(rig: &FiniteRig, gens: &[usize]) -> Vec<usize> {
    let mut member = vec![false; rig.size()];
    member[rig.one()] = true;
    let mut stack: Vec<usize> = vec![rig.one()];
    for &g in gens {
        if !member[g] {
            member[g] = true;
            stack.push(g);
        }
    }
    while let Some(x) = stack.pop() {
        for y in rig.elements() {
            if !member[y] {
                continue;
            }
            let p = rig.mul(x, y);
            if !member[p] {
                member[p] = true;
                stack.push(p);
            }
        }
    }
    rig.elements().filter(|&x| member[x]).collect()
}

fn require_submonoid(rig: &FiniteRig, f: &[usize]) -> Result<()> {
    if let Some(&bad) = f.iter().find(|&&x| x >= rig.size()) {
        return Err(Error::Shape(format!(
            "submonoid member {bad} out of range for carrier of {}",
            rig.size()
        )));
    }
    if !f.contains(&rig.one()) {
        return Err(Error::Shape("submonoid must contain one".into()));
    }
    for &x in f {
        for &y in f {
            if !f.contains(&rig.mul(x, y)) {
                return Err(Error::Shape(format!(
                    "set not closed under multiplication: {} * {} escapes",
                    rig.label(x),
                    rig.label(y)
                )));
            }
        }
    }
    Ok(())
}

/// The congruence identifying `x` and `y` when each divides into the other
/// through `F`: some `w` in `F` has `w * x <= y`, and symmetrically.
pub fn localization_congruence(rig: &FiniteRig, f: &[usize]) -> Result<Congruence> {
    rig.require_integral()?;
    require_submonoid(rig, f)?;
    let n = rig.size();
    let leq = rig.leq_table();
    let below = |x: usize, y: usize| f.iter().any(|&w| leq[rig.mul(w, x) * n + y]);
    let class_of = (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| below(x, y) && below(y, x))
                .expect("x relates to itself through w = 1")
        })
        .collect();
    Congruence::new(rig, class_of)
}

fn localize_named(
    rig: &FiniteRig,
    f: &[usize],
    name: String,
) -> Result<(FiniteRig, RigMorphism)> {
    let cong = localization_congruence(rig, f)?;
    let (q, u) = cong.quotient()?;
    let q = q.renamed(name);
    let u = RigMorphism::new(rig, &q, u.map().to_vec())?;
    for &w in f {
        assert!(
            u.apply(w) == q.one(),
            "localization must invert every member of the submonoid"
        );
    }
    Ok((q, u))
}

/// Invert a multiplicative submonoid. Returns the quotient and the
/// universal morphism into it.
pub fn localize(rig: &FiniteRig, f: &[usize]) -> Result<(FiniteRig, RigMorphism)> {
    localize_named(rig, f, format!("{}[F^-1]", rig.name()))
}

/// Invert a single element, closing it into the submonoid of its powers.
pub fn localize_at(rig: &FiniteRig, a: usize) -> Result<(FiniteRig, RigMorphism)> {
    let f = submonoid_closure(rig, &[a]);
    localize_named(rig, &f, format!("{}[{}^-1]", rig.name(), rig.label(a)))
}

/// Inverting a strongly idempotent element is just restriction to its
/// down-set: the carrier is `{x | x <= a}` and the map is `x -> a * x`.
/// The result is verified isomorphic to `localize_at(rig, a)`.
pub fn localize_strong_idem(rig: &FiniteRig, a: usize) -> Result<(FiniteRig, RigMorphism)> {
    let (down, onto) = rig.restrict_below(a)?;
    let (_, u) = localize_at(rig, a)?;
    let iso = induced_iso(&u, &onto)
        .expect("down-set of a strongly idempotent element realizes the localization");
    assert!(iso.is_bijective());
    Ok((down, onto))
}

/// Check initiality: every morphism `rig -> target` sending `F` into `{1}`
/// factors through the localization by exactly one morphism.
pub fn verify_localization_universal(
    rig: &FiniteRig,
    f: &[usize],
    target: &FiniteRig,
) -> Result<bool> {
    let (q, u) = localize(rig, f)?;
    let mut composites: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for g in enumerate_homs(&q, target) {
        *composites
            .entry(u.then(&g)?.map().to_vec())
            .or_insert(0) += 1;
    }
    let mut inverting = 0usize;
    for h in enumerate_homs(rig, target) {
        if f.iter().all(|&w| h.apply(w) == target.one()) {
            inverting += 1;
            if composites.get(h.map()) != Some(&1) {
                return Ok(false);
            }
        }
    }
    // Every factorization composite must also be hit: counts match exactly.
    Ok(inverting == composites.len())
}

/// The square of localizations at `a`, `b`, `a+b`, and `a*b`.
#[derive(Debug, Clone)]
pub struct PushoutPullback {
    /// `A[(a+b)^-1]`, the corner the square is built under.
    pub sum: FiniteRig,
    /// `A[a^-1]` and `A[b^-1]`.
    pub left: FiniteRig,
    pub right: FiniteRig,
    /// `A[(a*b)^-1]`.
    pub product: FiniteRig,
    pub square_commutes: bool,
    /// The corner maps bijectively onto the compatible pairs in
    /// `left x right`.
    pub is_pullback: bool,
    /// The kernels of the two side localizations join to the kernel of the
    /// product localization.
    pub is_pushout: bool,
}

impl PushoutPullback {
    pub fn holds(&self) -> bool {
        self.square_commutes && self.is_pullback && self.is_pushout
    }
}

/// Verify that localizations at `a` and `b` glue: `A[(a+b)^-1]` is the
/// fiber product of `A[a^-1]` and `A[b^-1]` over `A[(a*b)^-1]`, and the
/// square is simultaneously a pushout of congruences.
pub fn pushout_pullback_check(rig: &FiniteRig, a: usize, b: usize) -> Result<PushoutPullback> {
    let (sum, u_sum) = localize_at(rig, rig.add(a, b))?;
    let (left, u_left) = localize_at(rig, a)?;
    let (right, u_right) = localize_at(rig, b)?;
    let (product, u_product) = localize_at(rig, rig.mul(a, b))?;

    // Each map inverts the target's generator, so the factorizations exist.
    let to_left = factor_through(&u_sum, &u_left)?;
    let to_right = factor_through(&u_sum, &u_right)?;
    let left_down = factor_through(&u_left, &u_product)?;
    let right_down = factor_through(&u_right, &u_product)?;

    let square_commutes = to_left.then(&left_down)? == to_right.then(&right_down)?;

    let mut compatible: Vec<(usize, usize)> = Vec::new();
    for x in left.elements() {
        for y in right.elements() {
            if left_down.apply(x) == right_down.apply(y) {
                compatible.push((x, y));
            }
        }
    }
    let mut images: Vec<(usize, usize)> = sum
        .elements()
        .map(|z| (to_left.apply(z), to_right.apply(z)))
        .collect();
    images.sort_unstable();
    let distinct = images.windows(2).all(|w| w[0] != w[1]);
    let is_pullback = distinct && images == compatible;

    let join = Congruence::kernel(&u_left).join(&Congruence::kernel(&u_right))?;
    let is_pushout = join == Congruence::kernel(&u_product);

    Ok(PushoutPullback {
        sum,
        left,
        right,
        product,
        square_commutes,
        is_pullback,
        is_pushout,
    })
}
