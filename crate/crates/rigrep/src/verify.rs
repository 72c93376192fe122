//! The staged invariant suite behind the `verify` subcommand.
//!
//! Every stage prints exactly one line, PASS, FAIL, or SKIP with a reason,
//! in a fixed order, so two runs over the same input are byte-identical.
//! Stages whose cost grows too fast for large carriers are gated by size
//! and report SKIP instead of silently thinning their quantifiers.

use std::collections::BTreeSet;

use crate::generate::lattice_catalog;
use crate::localization::{localize_at, pushout_pullback_check};
use crate::mv::{
    dubuc_poveda_fiber, ideal_of_point, mv_from_rig, point_of_ideal, prime_ideals, rig_from_mv,
};
use crate::represent::{
    build_representation, stalk, subdirect_embedding, support_map, support_reticulation_isos,
    unit_section_iso,
};
use crate::residuated::{is_prelinear, is_wajsberg, prelinear_fibers_totally_ordered};
use crate::reticulation::{
    retic_localization_compat, reticulate, verify_reticulation_universal, Reticulation,
};
use crate::rig::FiniteRig;
use crate::spectrum::{birkhoff, spectrum};

const STAGES: [&str; 13] = [
    "axioms",
    "integrality",
    "order",
    "powers",
    "localizations",
    "pushout-pullback",
    "reticulation",
    "reticulation-universal",
    "spectrum",
    "representation",
    "subdirect",
    "prelinear-fibers",
    "mv-bridge",
];

/// One line per stage plus an overall verdict.
pub struct Report {
    pub lines: Vec<String>,
    pub ok: bool,
}

impl Report {
    pub fn text(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }

    fn pass(&mut self, name: &str) {
        self.lines.push(format!("{name}: PASS"));
    }

    fn fail(&mut self, name: &str, why: &str) {
        self.lines.push(format!("{name}: FAIL ({why})"));
        self.ok = false;
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.lines.push(format!("{name}: SKIP ({why})"));
    }

    fn check(&mut self, name: &str, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => self.pass(name),
            Err(why) => self.fail(name, &why),
        }
    }
}

pub fn run_suite(rig: &FiniteRig) -> Report {
    let mut report = Report {
        lines: Vec::new(),
        ok: true,
    };
    let n = rig.size();

    report.check("axioms", check_axioms(rig));

    if let Some(x) = rig.elements().find(|&x| rig.add(rig.one(), x) != rig.one()) {
        report.fail(
            "integrality",
            &format!("1 + {} = {}", rig.label(x), rig.label(rig.add(rig.one(), x))),
        );
        for name in &STAGES[2..] {
            report.skip(name, "needs an integral rig");
        }
        return report;
    }
    report.pass("integrality");

    report.check("order", check_order(rig));
    report.check("powers", check_powers(rig));
    report.check("localizations", check_localizations(rig));

    if n <= 8 {
        report.check("pushout-pullback", check_pushout_pullback(rig));
    } else {
        report.skip("pushout-pullback", "carrier above 8 elements");
    }

    let retic = match reticulate(rig) {
        Ok(r) => r,
        Err(e) => {
            report.fail("reticulation", &e.to_string());
            for name in &STAGES[7..] {
                report.skip(name, "needs the reticulation");
            }
            return report;
        }
    };
    report.check("reticulation", check_reticulation(rig, &retic));

    if n <= 8 {
        report.check("reticulation-universal", check_reticulation_universal(&retic));
    } else {
        report.skip("reticulation-universal", "carrier above 8 elements");
    }

    report.check("spectrum", check_spectrum(rig, &retic));

    if rig.is_trivial() {
        report.skip("representation", "the trivial rig has no points");
        report.skip("subdirect", "the trivial rig has no points");
    } else {
        if n <= 8 {
            report.check("representation", check_representation(rig));
        } else {
            report.skip("representation", "carrier above 8 elements");
        }
        report.check("subdirect", check_subdirect(rig));
    }

    match is_prelinear(rig) {
        Ok(true) => report.check(
            "prelinear-fibers",
            prelinear_fibers_totally_ordered(rig)
                .map(|_| ())
                .map_err(|e| e.to_string()),
        ),
        Ok(false) => report.skip("prelinear-fibers", "not pre-linear"),
        Err(e) => report.fail("prelinear-fibers", &e.to_string()),
    }

    if n > 64 {
        report.skip("mv-bridge", "carrier above 64 elements");
    } else {
        match is_wajsberg(rig) {
            Ok(true) => report.check("mv-bridge", check_mv(rig)),
            Ok(false) => report.skip("mv-bridge", "not a Wajsberg rig"),
            Err(e) => report.fail("mv-bridge", &e.to_string()),
        }
    }

    report
}

fn check_axioms(rig: &FiniteRig) -> Result<(), String> {
    FiniteRig::new(
        rig.name(),
        rig.labels().to_vec(),
        rig.add_table(),
        rig.mul_table(),
        rig.zero(),
        rig.one(),
    )
    .map(|_| ())
    .map_err(|e| e.to_string())
}

fn check_order(rig: &FiniteRig) -> Result<(), String> {
    let ord = rig.canonical_order();
    if !ord.is_antisymmetric() {
        return Err("the canonical preorder is not antisymmetric".into());
    }
    for x in rig.elements() {
        if !ord.leq(rig.zero(), x) {
            return Err(format!("0 is not below {}", rig.label(x)));
        }
        if !ord.leq(x, rig.one()) {
            return Err(format!("{} is not below 1", rig.label(x)));
        }
    }
    Ok(())
}

fn check_powers(rig: &FiniteRig) -> Result<(), String> {
    let ord = rig.canonical_order();
    for x in rig.elements() {
        let bx = rig.powers(x).len();
        for y in rig.elements() {
            let by = rig.powers(y).len();
            let s = rig.add(x, y);
            for m in 1..=bx {
                for nn in 1..=by {
                    let lhs = rig.power(s, m * nn);
                    let rhs = rig.add(rig.power(x, m), rig.power(y, nn));
                    if !ord.leq(lhs, rhs) {
                        return Err(format!(
                            "({} + {})^{} is not below {}^{} + {}^{}",
                            rig.label(x),
                            rig.label(y),
                            m * nn,
                            rig.label(x),
                            m,
                            rig.label(y),
                            nn
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_localizations(rig: &FiniteRig) -> Result<(), String> {
    for a in rig.elements() {
        let (q, _) = localize_at(rig, a).map_err(|e| e.to_string())?;
        if q.is_trivial() != rig.is_nilpotent(a) {
            return Err(format!(
                "inverting {} trivializes exactly when it is nilpotent, but did not",
                rig.label(a)
            ));
        }
    }
    Ok(())
}

fn check_pushout_pullback(rig: &FiniteRig) -> Result<(), String> {
    for a in rig.elements() {
        for b in rig.elements() {
            let square = pushout_pullback_check(rig, a, b).map_err(|e| e.to_string())?;
            if !square.holds() {
                return Err(format!(
                    "the localization square at ({}, {}) fails",
                    rig.label(a),
                    rig.label(b)
                ));
            }
        }
    }
    Ok(())
}

fn check_reticulation(
    rig: &FiniteRig,
    retic: &crate::reticulation::Reticulation,
) -> Result<(), String> {
    if !retic.lattice.is_distributive_lattice() {
        return Err("the reticulation is not a distributive lattice".into());
    }
    if !retic.unit.is_surjective() {
        return Err("the unit is not surjective".into());
    }
    if !retic.unit.is_local() {
        return Err("the unit is not a local morphism".into());
    }
    for x in rig.elements() {
        retic_localization_compat(retic, x).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn check_reticulation_universal(retic: &Reticulation) -> Result<(), String> {
    for target in lattice_catalog() {
        let ok = verify_reticulation_universal(retic, &target).map_err(|e| e.to_string())?;
        if !ok {
            return Err(format!(
                "factorization through the reticulation fails against `{}`",
                target.name()
            ));
        }
    }
    Ok(())
}

fn check_spectrum(
    rig: &FiniteRig,
    retic: &crate::reticulation::Reticulation,
) -> Result<(), String> {
    birkhoff(&retic.lattice).map_err(|e| e.to_string())?;
    let points = spectrum(rig);
    let lattice_points = spectrum(&retic.lattice);
    if points.len() != lattice_points.len() {
        return Err(format!(
            "{} points upstairs, {} on the reticulation",
            points.len(),
            lattice_points.len()
        ));
    }
    let mut maps: BTreeSet<Vec<usize>> = points.iter().map(|p| p.morphism.map().to_vec()).collect();
    if maps.len() != points.len() {
        return Err("points of the rig are not distinct".into());
    }
    for p in &lattice_points {
        let composed = retic.unit.then(&p.morphism).map_err(|e| e.to_string())?;
        if !maps.remove(composed.map()) {
            return Err("precomposition with the unit is not a bijection on points".into());
        }
    }
    Ok(())
}

fn check_representation(rig: &FiniteRig) -> Result<(), String> {
    let rep = build_representation(rig).map_err(|e| e.to_string())?;
    let sm = support_map(&rep).map_err(|e| e.to_string())?;
    support_reticulation_isos(&rep, &sm).map_err(|e| e.to_string())?;
    let (_, iso) = unit_section_iso(&rep);
    if !iso.is_bijective() {
        return Err("the section comparison is not bijective".into());
    }
    Ok(())
}

fn check_subdirect(rig: &FiniteRig) -> Result<(), String> {
    let se = subdirect_embedding(rig).map_err(|e| e.to_string())?;
    if !se.is_injective() {
        return Err("the tuple map is not injective".into());
    }
    if !se.components_surjective() {
        return Err("a component map is not surjective".into());
    }
    if !se.stalks_really_local() {
        return Err("a stalk is not really local".into());
    }
    Ok(())
}

fn check_mv(rig: &FiniteRig) -> Result<(), String> {
    let m = mv_from_rig(rig).map_err(|e| e.to_string())?;
    let (back, _) = rig_from_mv(&m).map_err(|e| e.to_string())?;
    if &back != rig {
        return Err("the rig does not survive the MV round trip".into());
    }
    let primes = prime_ideals(&m);
    let points = spectrum(rig);
    if primes.len() != points.len() {
        return Err(format!(
            "{} prime ideals against {} points",
            primes.len(),
            points.len()
        ));
    }
    for ideal in &primes {
        let point = point_of_ideal(&m, ideal).map_err(|e| e.to_string())?;
        let round = ideal_of_point(&m, &point).map_err(|e| e.to_string())?;
        if &round != ideal {
            return Err("ideal-to-point is not inverse to point-to-ideal".into());
        }
        let fiber = dubuc_poveda_fiber(&m, ideal).map_err(|e| e.to_string())?;
        let (direct, _) = stalk(rig, &point).map_err(|e| e.to_string())?;
        if fiber != direct {
            return Err("the ideal fiber disagrees with the stalk".into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{boolean, lukasiewicz, saturating_naturals, trivial, two};

    #[test]
    fn small_catalog_members_pass_every_applicable_stage() {
        for rig in [two(), lukasiewicz(3), boolean(2)] {
            let report = run_suite(&rig);
            assert!(report.ok, "{}:\n{}", rig.name(), report.text());
            assert!(!report.text().contains("FAIL"));
        }
    }

    #[test]
    fn reports_have_one_line_per_stage_in_order() {
        let report = run_suite(&two());
        assert_eq!(report.lines.len(), STAGES.len());
        for (line, stage) in report.lines.iter().zip(STAGES) {
            assert!(line.starts_with(stage), "{line} vs {stage}");
        }
    }

    #[test]
    fn the_trivial_rig_passes_with_skips() {
        let report = run_suite(&trivial());
        assert!(report.ok, "{}", report.text());
        assert!(report.text().contains("representation: SKIP"));
    }

    #[test]
    fn non_integral_input_fails_fast() {
        let report = run_suite(&saturating_naturals(2));
        assert!(!report.ok);
        assert!(report.lines[1].starts_with("integrality: FAIL"));
        assert!(report.lines[2].contains("SKIP"));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite(&lukasiewicz(4)).text();
        let b = run_suite(&lukasiewicz(4)).text();
        assert_eq!(a, b);
    }
}
