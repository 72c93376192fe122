//! Residuation on finite rigs with idempotent addition: the implication
//! table `a -o b`, pre-linearity, the Wajsberg identity, and the shape of
//! the fibers of pre-linear rigs.
//!
//! With an idempotent addition the set `{c | a*c <= b}` is closed under
//! sums, so its sum is its maximum and the adjunction
//! `a*c <= b  iff  c <= a -o b` holds by construction; it is still
//! re-verified on every table.

use crate::error::{Error, Result};
use crate::localization::{localize, localize_at};
use crate::reticulation::reticulate;
use crate::rig::{FiniteRig, RigMorphism};
use crate::spectrum::{join_irreducibles, spectrum};

/// The implication table of a residuated rig.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualTable {
    over: FiniteRig,
    imp: Vec<usize>,
}

impl ResidualTable {
    pub fn over(&self) -> &FiniteRig {
        &self.over
    }

    /// `a -o b`, the largest `c` with `a*c <= b`.
    #[inline]
    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.over.size() + b]
    }
}

/// Build the implication table and re-verify the adjunction exhaustively.
pub fn residuals(rig: &FiniteRig) -> Result<ResidualTable> {
    if let Some(x) = rig.elements().find(|&x| rig.add(x, x) != x) {
        return Err(Error::NotIdempotentAddition {
            name: rig.name().to_string(),
            label: rig.label(x).to_string(),
        });
    }
    let n = rig.size();
    let leq = rig.leq_table();
    let mut imp = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            imp[a * n + b] = rig
                .elements()
                .filter(|&c| leq[rig.mul(a, c) * n + b])
                .fold(rig.zero(), |acc, c| rig.add(acc, c));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                assert_eq!(
                    leq[rig.mul(a, c) * n + b],
                    leq[c * n + imp[a * n + b]],
                    "the sum of lower solutions is the residual"
                );
            }
        }
    }
    Ok(ResidualTable {
        over: rig.clone(),
        imp,
    })
}

/// `(a -o b) + (b -o a) = 1` everywhere.
pub fn is_prelinear(rig: &FiniteRig) -> Result<bool> {
    Ok(prelinear_witness(&residuals(rig)?).is_none())
}

/// The first pair breaking pre-linearity, if any.
fn prelinear_witness(table: &ResidualTable) -> Option<(usize, usize)> {
    let rig = table.over();
    let one = rig.one();
    for a in rig.elements() {
        for b in rig.elements() {
            if rig.add(table.imp(a, b), table.imp(b, a)) != one {
                return Some((a, b));
            }
        }
    }
    None
}

/// `(x -o y) -o y = (y -o x) -o x` everywhere.
pub fn is_wajsberg(rig: &FiniteRig) -> Result<bool> {
    let table = residuals(rig)?;
    for x in rig.elements() {
        for y in rig.elements() {
            if table.imp(table.imp(x, y), y) != table.imp(table.imp(y, x), x) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The stalks and join-irreducible fibers of a pre-linear rig, each
/// re-verified to be totally ordered and to keep the residual structure of
/// the source: the quotient of an implication is the implication of the
/// quotients.
#[derive(Debug, Clone)]
pub struct PrelinearFibers {
    pub stalks: Vec<FiniteRig>,
    pub irreducible_fibers: Vec<FiniteRig>,
}

/// Check that a pre-linear rig falls apart into chains: every stalk and
/// every fiber over a join-irreducible of the reticulation is totally
/// ordered.
pub fn prelinear_fibers_totally_ordered(rig: &FiniteRig) -> Result<PrelinearFibers> {
    rig.require_integral()?;
    let table = residuals(rig)?;
    if let Some((a, b)) = prelinear_witness(&table) {
        return Err(Error::NotPrelinear {
            name: rig.name().to_string(),
            left: rig.label(a).to_string(),
            right: rig.label(b).to_string(),
        });
    }
    let mut stalks = Vec::new();
    for point in spectrum(rig) {
        let (stalk, unit) = localize(rig, &point.filter)?;
        verify_chain_quotient(&table, &stalk, &unit);
        stalks.push(stalk);
    }
    let retic = reticulate(rig)?;
    let mut irreducible_fibers = Vec::new();
    for l in join_irreducibles(&retic.lattice) {
        let x = retic
            .unit
            .least_preimage(l)
            .expect("the reticulation unit is surjective");
        let (fiber, unit) = localize_at(rig, x)?;
        verify_chain_quotient(&table, &fiber, &unit);
        irreducible_fibers.push(fiber);
    }
    Ok(PrelinearFibers {
        stalks,
        irreducible_fibers,
    })
}

/// A localization of a pre-linear rig must be a chain, and its residuals
/// must be the images of the residuals upstairs.
fn verify_chain_quotient(table: &ResidualTable, quotient: &FiniteRig, unit: &RigMorphism) {
    assert!(
        quotient.canonical_order().is_total(),
        "localizing a pre-linear rig yields a chain"
    );
    let downstairs = residuals(quotient)
        .expect("a localization of an integral rig has idempotent addition");
    let rig = table.over();
    for x in rig.elements() {
        for y in rig.elements() {
            assert_eq!(
                unit.apply(table.imp(x, y)),
                downstairs.imp(unit.apply(x), unit.apply(y)),
                "localization commutes with residuals"
            );
        }
    }
}
