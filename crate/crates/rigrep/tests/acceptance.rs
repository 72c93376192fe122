//! The acceptance gate: ten criteria, one test and one summary line each.
//!
//! Each criterion sweeps the algebra catalog (base members, pairwise
//! products, seeded randoms) and upholds its own runtime budget where one
//! is stated. The tests serialize through a lock so the measured times are
//! not distorted by the other criteria running next to them.

mod common;

use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Stdio};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use common::*;
use rigrep::doc::{document_of_rig, emit};
use rigrep::generate::{chain, lattice_catalog, lukasiewicz, trivial, two};
use rigrep::localization::{
    pushout_pullback_check, submonoid_closure, verify_localization_universal,
};
use rigrep::mv::{
    dubuc_poveda_fiber, ideal_of_point, mv_from_rig, point_of_ideal, prime_ideals, rig_from_mv,
};
use rigrep::represent::{
    build_representation, stalk, subdirect_embedding, support_map, unit_section_iso,
};
use rigrep::residuated::{is_prelinear, prelinear_fibers_totally_ordered};
use rigrep::reticulation::{
    retic_localization_compat, reticulate, verify_reticulation_universal,
};
use rigrep::spectrum::{birkhoff, join_irreducibles, spectrum};
use rigrep::{Error, FiniteRig};

static ONE_AT_A_TIME: Mutex<()> = Mutex::new(());

/// Run one criterion, print exactly one pass/fail line for it, and keep
/// the test result honest: any panic or budget overrun fails the test.
fn criterion(
    number: usize,
    what: &str,
    budget: Option<Duration>,
    body: impl FnOnce() -> Result<String, String>,
) {
    let guard = ONE_AT_A_TIME
        .lock()
        .unwrap_or_else(|poisoned| poisoned.into_inner());
    let started = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = started.elapsed();
    drop(guard);
    let (verdict, detail) = match &outcome {
        Ok(Ok(detail)) => {
            if let Some(limit) = budget {
                if elapsed > limit {
                    (
                        "FAIL",
                        format!("{detail}; over budget ({elapsed:.2?} > {limit:.2?})"),
                    )
                } else {
                    ("PASS", detail.clone())
                }
            } else {
                ("PASS", detail.clone())
            }
        }
        Ok(Err(why)) => ("FAIL", why.clone()),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            ("FAIL", msg)
        }
    };
    println!("criterion {number:02} {verdict} [{elapsed:.2?}] {what}: {detail}");
    assert_eq!(verdict, "PASS", "criterion {number:02}: {detail}");
}

#[test]
fn criterion_01_axiom_suite() {
    criterion(1, "rig laws on the catalog", Some(Duration::from_secs(10)), || {
        let mut corrupted = 0;
        for rig in catalog() {
            FiniteRig::new(
                rig.name(),
                rig.labels().to_vec(),
                rig.add_table(),
                rig.mul_table(),
                rig.zero(),
                rig.one(),
            )
            .map_err(|e| format!("{} rejects its own tables: {e}", rig.name()))?;

            // Desymmetrize one cell in each table; the checker must name
            // the broken law.
            let n = rig.size();
            for flip_mul in [false, true] {
                let mut add = rig.add_table();
                let mut mul = rig.mul_table();
                let table = if flip_mul { &mut mul } else { &mut add };
                table[0][1] = (table[0][1] + 1) % n;
                let expected = if flip_mul { "mul-commutativity" } else { "add-commutativity" };
                match FiniteRig::new(rig.name(), rig.labels().to_vec(), add, mul, rig.zero(), rig.one()) {
                    Err(Error::AxiomViolation { law, .. }) if law == expected => corrupted += 1,
                    Err(e) => return Err(format!("{}: corruption misnamed: {e}", rig.name())),
                    Ok(_) => return Err(format!("{}: corrupted table accepted", rig.name())),
                }
            }
        }
        Ok(format!(
            "{} members revalidated, {} corruptions rejected by name",
            catalog().len(),
            corrupted
        ))
    });
}

#[test]
fn criterion_02_localization_universal_property() {
    criterion(2, "localization universal property", Some(Duration::from_secs(60)), || {
        let targets = [two(), chain(3), lukasiewicz(3), trivial()];
        let mut checks = 0;
        for rig in catalog_le(6) {
            for a in rig.elements() {
                for b in rig.elements().skip(a) {
                    let f = submonoid_closure(rig, &[a, b]);
                    for t in &targets {
                        let ok = verify_localization_universal(rig, &f, t)
                            .map_err(|e| format!("{}: {e}", rig.name()))?;
                        if !ok {
                            return Err(format!(
                                "{} at F = <{}, {}> against {}",
                                rig.name(),
                                rig.label(a),
                                rig.label(b),
                                t.name()
                            ));
                        }
                        checks += 1;
                    }
                }
            }
        }
        Ok(format!(
            "{} factorization checks across {} rigs and 4 targets",
            checks,
            catalog_le(6).len()
        ))
    });
}

#[test]
fn criterion_03_pushout_pullback_squares() {
    criterion(3, "gluing squares", Some(Duration::from_secs(60)), || {
        let mut squares = 0;
        for rig in catalog_le(8) {
            for a in rig.elements() {
                for b in rig.elements() {
                    let sq = pushout_pullback_check(rig, a, b)
                        .map_err(|e| format!("{}: {e}", rig.name()))?;
                    if !sq.holds() {
                        return Err(format!(
                            "{} at ({}, {})",
                            rig.name(),
                            rig.label(a),
                            rig.label(b)
                        ));
                    }
                    squares += 1;
                }
            }
        }
        Ok(format!(
            "{} squares across {} rigs are pullbacks and pushouts",
            squares,
            catalog_le(8).len()
        ))
    });
}

#[test]
fn criterion_04_reticulation() {
    criterion(4, "reticulation", Some(Duration::from_secs(30)), || {
        let lattices = lattice_catalog();
        for rig in catalog() {
            let r = reticulate(rig).map_err(|e| format!("{}: {e}", rig.name()))?;
            if !r.lattice.is_distributive_lattice() {
                return Err(format!("{}: not a distributive lattice", rig.name()));
            }
            if !r.unit.is_surjective() || !r.unit.is_local() {
                return Err(format!("{}: the unit is not a surjective local morphism", rig.name()));
            }
            for l in &lattices {
                let ok = verify_reticulation_universal(&r, l)
                    .map_err(|e| format!("{}: {e}", rig.name()))?;
                if !ok {
                    return Err(format!("{} against {}", rig.name(), l.name()));
                }
            }
            for x in rig.elements() {
                retic_localization_compat(&r, x)
                    .map_err(|e| format!("{} at {}: {e}", rig.name(), rig.label(x)))?;
            }
        }
        Ok(format!(
            "{} rigs: lattice quotient, universal against {} lattices, localization compatible",
            catalog().len(),
            lattices.len()
        ))
    });
}

#[test]
fn criterion_05_power_inequality() {
    criterion(5, "power inequality", None, || {
        let mut checks: u64 = 0;
        for rig in catalog() {
            let ord = rig.canonical_order();
            for x in rig.elements() {
                let mbound = rig.powers(x).len();
                for y in rig.elements() {
                    let nbound = rig.powers(y).len();
                    let sum = rig.add(x, y);
                    for m in 1..=mbound {
                        let xm = rig.power(x, m);
                        for k in 1..=nbound {
                            let lhs = rig.power(sum, m * k);
                            let rhs = rig.add(xm, rig.power(y, k));
                            if !ord.leq(lhs, rhs) {
                                return Err(format!(
                                    "{} at x={}, y={}, m={m}, n={k}",
                                    rig.name(),
                                    rig.label(x),
                                    rig.label(y)
                                ));
                            }
                            checks += 1;
                        }
                    }
                }
            }
        }
        Ok(format!("{checks} instances hold exactly across the catalog"))
    });
}

#[test]
fn criterion_06_representation_theorem() {
    criterion(6, "sheaf representation", Some(Duration::from_secs(120)), || {
        let mut members = 0;
        for rig in catalog_le(8) {
            let rep = build_representation(rig).map_err(|e| format!("{}: {e}", rig.name()))?;
            if !rep.sheaf.is_sheaf().map_err(|e| format!("{}: {e}", rig.name()))? {
                return Err(format!("{}: a binary cover fails to glue", rig.name()));
            }
            if !rep.fiber(rep.lattice().zero()).is_trivial() {
                return Err(format!("{}: the bottom fiber is not trivial", rig.name()));
            }
            for &l in &rep.irr {
                if !rep.fiber(l).is_really_local() {
                    return Err(format!(
                        "{}: the fiber at {} is not really local",
                        rig.name(),
                        rep.lattice().label(l)
                    ));
                }
            }
            let sm = support_map(&rep).map_err(|e| format!("{}: {e}", rig.name()))?;
            for d in rep.lattice().elements() {
                if !sm.chi[d].is_local() {
                    return Err(format!("{}: a support component is not local", rig.name()));
                }
            }
            let (_, iso) = unit_section_iso(&rep);
            if !iso.is_bijective() {
                return Err(format!("{}: sections do not reconstruct the rig", rig.name()));
            }
            members += 1;
        }
        Ok(format!(
            "{members} rigs are the sections of their sheaves of really local fibers"
        ))
    });
}

#[test]
fn criterion_07_subdirect_corollaries() {
    criterion(7, "subdirect decomposition", None, || {
        let mut prelinear_members = 0;
        for rig in catalog() {
            let emb = subdirect_embedding(rig).map_err(|e| format!("{}: {e}", rig.name()))?;
            if !emb.is_injective() {
                return Err(format!("{}: not injective", rig.name()));
            }
            if !emb.components_surjective() {
                return Err(format!("{}: a component is not onto its stalk", rig.name()));
            }
            if !emb.stalks_really_local() {
                return Err(format!("{}: a stalk is not really local", rig.name()));
            }
            if is_prelinear(rig).map_err(|e| format!("{}: {e}", rig.name()))? {
                let fibers = prelinear_fibers_totally_ordered(rig)
                    .map_err(|e| format!("{}: {e}", rig.name()))?;
                for s in fibers.stalks.iter().chain(&fibers.irreducible_fibers) {
                    if !s.canonical_order().is_total() {
                        return Err(format!("{}: a factor is not totally ordered", rig.name()));
                    }
                }
                prelinear_members += 1;
            }
        }
        Ok(format!(
            "{} rigs embed subdirectly; {} pre-linear members split into chains",
            catalog().len(),
            prelinear_members
        ))
    });
}

#[test]
fn criterion_08_spectrum_consistency() {
    criterion(8, "spectrum duality", None, || {
        for l in lattice_catalog() {
            let d = birkhoff(&l).map_err(|e| format!("{}: {e}", l.name()))?;
            if d.points.len() != join_irreducibles(&l).len() {
                return Err(format!("{}: point and irreducible counts differ", l.name()));
            }
            for (k, &pi) in d.point_of_irreducible.iter().enumerate() {
                if d.irreducible_of_point[pi] != k {
                    return Err(format!("{}: duality is not a bijection", l.name()));
                }
            }
        }
        for rig in catalog() {
            let r = reticulate(rig).map_err(|e| format!("{}: {e}", rig.name()))?;
            let mut composed: Vec<Vec<usize>> = spectrum(&r.lattice)
                .into_iter()
                .map(|p| r.unit.then(&p.morphism).unwrap().map().to_vec())
                .collect();
            composed.sort();
            composed.dedup();
            let direct: Vec<Vec<usize>> = spectrum(rig)
                .into_iter()
                .map(|p| p.morphism.map().to_vec())
                .collect();
            if composed != direct {
                return Err(format!("{}: precomposition misses points", rig.name()));
            }
        }
        Ok(format!(
            "duality verified on {} lattices; point sets match across the unit for {} rigs",
            lattice_catalog().len(),
            catalog().len()
        ))
    });
}

#[test]
fn criterion_09_mv_bridge() {
    criterion(9, "MV bridge", Some(Duration::from_secs(30)), || {
        let mut algebras = 0;
        let mut primes = 0;
        for i in 2..=6 {
            for j in i..=7 {
                let rig = if j == 7 {
                    lukasiewicz(i)
                } else {
                    FiniteRig::product(&lukasiewicz(i), &lukasiewicz(j)).0
                };
                let m = mv_from_rig(&rig).map_err(|e| format!("{}: {e}", rig.name()))?;
                let (back, _) = rig_from_mv(&m).map_err(|e| format!("{}: {e}", rig.name()))?;
                for x in rig.elements() {
                    for y in rig.elements() {
                        if back.add(x, y) != rig.add(x, y) || back.mul(x, y) != rig.mul(x, y) {
                            return Err(format!("{}: the round trip drifts", rig.name()));
                        }
                    }
                }
                let points = spectrum(&back);
                let ideals = prime_ideals(&m);
                if points.len() != ideals.len() {
                    return Err(format!("{}: point and prime counts differ", rig.name()));
                }
                for p in &points {
                    let ideal = ideal_of_point(&m, p).map_err(|e| format!("{}: {e}", rig.name()))?;
                    let back_p = point_of_ideal(&m, &ideal).map_err(|e| format!("{}: {e}", rig.name()))?;
                    if back_p.morphism.map() != p.morphism.map() {
                        return Err(format!("{}: the point round trip drifts", rig.name()));
                    }
                }
                for ideal in &ideals {
                    let fiber = dubuc_poveda_fiber(&m, ideal)
                        .map_err(|e| format!("{}: {e}", rig.name()))?;
                    let point = point_of_ideal(&m, ideal).map_err(|e| format!("{}: {e}", rig.name()))?;
                    let (s, _) = stalk(&back, &point).map_err(|e| format!("{}: {e}", rig.name()))?;
                    if fiber.size() != s.size() {
                        return Err(format!("{}: a fiber disagrees with its stalk", rig.name()));
                    }
                    primes += 1;
                }
                algebras += 1;
            }
        }
        Ok(format!(
            "{algebras} algebras round trip; {primes} prime ideals match points and stalks"
        ))
    });
}

#[test]
fn criterion_10_cli_determinism() {
    criterion(10, "CLI verify determinism", None, || {
        let bin = env!("CARGO_BIN_EXE_rigrep");
        let run = |doc: &str| {
            let mut child = Command::new(bin)
                .arg("verify")
                .stdin(Stdio::piped())
                .stdout(Stdio::piped())
                .stderr(Stdio::piped())
                .spawn()
                .map_err(|e| format!("spawn: {e}"))?;
            child
                .stdin
                .take()
                .unwrap()
                .write_all(doc.as_bytes())
                .map_err(|e| format!("stdin: {e}"))?;
            child.wait_with_output().map_err(|e| format!("wait: {e}"))
        };
        for rig in catalog() {
            let doc = emit(&document_of_rig(rig));
            let first = run(&doc)?;
            let second = run(&doc)?;
            if first.status.code() != Some(0) {
                return Err(format!(
                    "{}: exit {:?}\n{}",
                    rig.name(),
                    first.status.code(),
                    String::from_utf8_lossy(&first.stdout)
                ));
            }
            if first.stdout != second.stdout || first.stderr != second.stderr {
                return Err(format!("{}: reports differ between runs", rig.name()));
            }
        }
        Ok(format!(
            "{} rigs verified twice with byte-identical reports and exit 0",
            catalog().len()
        ))
    });
}
