//! MV-algebras and their equivalence with Wajsberg integral rigs.
//!
//! The two presentations carry the same data: from a rig, `neg x = x -o 0`
//! and `x (+) y = neg(neg x * neg y)`; from an MV-algebra, `1 = neg 0`,
//! `x * y = neg(neg x (+) neg y)`, `x + y = neg(neg x (+) y) (+) y`, and
//! `x -o y = neg x (+) y`. Both constructions re-validate the full target
//! axiom set, so round-tripping is checked table by table, not assumed.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::localization::localize;
use crate::residuated::{residuals, ResidualTable};
use crate::rig::{FiniteRig, RigMorphism};
use crate::spectrum::SpectrumPoint;

/// A finite MV-algebra on an explicit truncated-addition table.
#[derive(Debug, Clone)]
pub struct MVAlgebra {
    name: String,
    labels: Vec<String>,
    n: usize,
    oplus: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
}

impl PartialEq for MVAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.oplus == other.oplus
            && self.neg == other.neg
            && self.zero == other.zero
    }
}

impl Eq for MVAlgebra {}

impl MVAlgebra {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        oplus: Vec<Vec<usize>>,
        neg: Vec<usize>,
        zero: usize,
    ) -> Result<Self> {
        let name = name.into();
        let n = labels.len();
        if n == 0 {
            return Err(Error::Shape("empty carrier".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Shape(format!("duplicate label `{l}`")));
            }
        }
        if oplus.len() != n || oplus.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("oplus table is not {n}x{n}")));
        }
        if neg.len() != n {
            return Err(Error::Shape(format!("neg table has {} entries, not {n}", neg.len())));
        }
        if zero >= n {
            return Err(Error::Shape(format!("zero index {zero} out of range")));
        }
        let flat: Vec<usize> = oplus.into_iter().flatten().collect();
        if let Some(&v) = flat.iter().chain(neg.iter()).find(|&&v| v >= n) {
            return Err(Error::Shape(format!("table value {v} out of range")));
        }
        let algebra = MVAlgebra {
            name,
            labels,
            n,
            oplus: flat,
            neg,
            zero,
        };
        algebra.check_laws()?;
        Ok(algebra)
    }

    fn check_laws(&self) -> Result<()> {
        let fail = |law: &'static str, witness: Vec<usize>, detail: String| {
            Err(Error::AxiomViolation {
                law,
                witness,
                detail,
            })
        };
        let one = self.neg(self.zero);
        for x in 0..self.n {
            if self.oplus(self.zero, x) != x {
                return fail(
                    "mv-unit",
                    vec![x],
                    format!("0 (+) {} != {}", self.labels[x], self.labels[x]),
                );
            }
            if self.neg(self.neg(x)) != x {
                return fail(
                    "mv-involution",
                    vec![x],
                    format!("neg(neg {}) != {}", self.labels[x], self.labels[x]),
                );
            }
            if self.oplus(x, one) != one {
                return fail(
                    "mv-absorb",
                    vec![x],
                    format!("{} (+) 1 != 1", self.labels[x]),
                );
            }
            for y in 0..self.n {
                if self.oplus(x, y) != self.oplus(y, x) {
                    return fail(
                        "mv-commutativity",
                        vec![x, y],
                        format!("{} (+) {} is not symmetric", self.labels[x], self.labels[y]),
                    );
                }
                let left = self.oplus(self.neg(self.oplus(self.neg(x), y)), y);
                let right = self.oplus(self.neg(self.oplus(self.neg(y), x)), x);
                if left != right {
                    return fail(
                        "mv-lukasiewicz",
                        vec![x, y],
                        format!(
                            "neg(neg {x_l} (+) {y_l}) (+) {y_l} = {l} but the mirror gives {r}",
                            x_l = self.labels[x],
                            y_l = self.labels[y],
                            l = self.labels[left],
                            r = self.labels[right],
                        ),
                    );
                }
                for z in 0..self.n {
                    if self.oplus(self.oplus(x, y), z) != self.oplus(x, self.oplus(y, z)) {
                        return fail(
                            "mv-associativity",
                            vec![x, y, z],
                            format!(
                                "({} (+) {}) (+) {} regroups differently",
                                self.labels[x], self.labels[y], self.labels[z]
                            ),
                        );
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn oplus(&self, x: usize, y: usize) -> usize {
        self.oplus[x * self.n + y]
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.neg(self.zero)
    }

    pub fn oplus_table(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|x| (0..self.n).map(|y| self.oplus(x, y)).collect())
            .collect()
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }

    /// `x <= y` in the natural order: `neg x (+) y = 1`.
    pub fn natural_leq(&self, x: usize, y: usize) -> bool {
        self.oplus(self.neg(x), y) == self.one()
    }

    /// The lattice join, `neg(neg x (+) y) (+) y`.
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.oplus(self.neg(self.oplus(self.neg(x), y)), y)
    }

    /// The lattice meet, `neg(neg x v neg y)`.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.neg(self.join(self.neg(x), self.neg(y)))
    }
}

/// Read the MV structure off a Wajsberg residuated integral rig.
pub fn mv_from_rig(rig: &FiniteRig) -> Result<MVAlgebra> {
    let not_mv = |detail: String| Error::NotMVRig {
        name: rig.name().to_string(),
        detail,
    };
    if !rig.is_integral() {
        return Err(not_mv("it is not integral".into()));
    }
    let table = residuals(rig).map_err(|e| not_mv(e.to_string()))?;
    for x in rig.elements() {
        for y in rig.elements() {
            if table.imp(table.imp(x, y), y) != table.imp(table.imp(y, x), x) {
                return Err(not_mv(format!(
                    "the Wajsberg identity fails at ({}, {})",
                    rig.label(x),
                    rig.label(y)
                )));
            }
        }
    }
    let neg = |x: usize| table.imp(x, rig.zero());
    let oplus: Vec<Vec<usize>> = rig
        .elements()
        .map(|x| {
            rig.elements()
                .map(|y| neg(rig.mul(neg(x), neg(y))))
                .collect()
        })
        .collect();
    MVAlgebra::new(
        rig.name(),
        rig.labels().to_vec(),
        oplus,
        rig.elements().map(neg).collect(),
        rig.zero(),
    )
}

/// Rebuild the rig and its residual table from an MV-algebra.
pub fn rig_from_mv(m: &MVAlgebra) -> Result<(FiniteRig, ResidualTable)> {
    let mul = |x: usize, y: usize| m.neg(m.oplus(m.neg(x), m.neg(y)));
    let rig = FiniteRig::from_fn(
        m.name(),
        m.labels().to_vec(),
        |x, y| m.join(x, y),
        mul,
        m.zero(),
        m.one(),
    )?;
    assert!(rig.is_integral(), "the MV join absorbs into 1");
    let table = residuals(&rig).expect("an MV join is idempotent");
    for x in m.elements() {
        for y in m.elements() {
            assert_eq!(
                table.imp(x, y),
                m.oplus(m.neg(x), y),
                "residuation agrees with neg x (+) y"
            );
        }
    }
    Ok((rig, table))
}

/// All ideals: downward-closed subsets containing 0 and closed under the
/// truncated addition. Found by closing each partial generating set, never
/// by scanning the powerset.
pub fn ideals(m: &MVAlgebra) -> Vec<Vec<usize>> {
    let close = |gens: &[usize]| -> Vec<usize> {
        let mut member = vec![false; m.size()];
        member[m.zero()] = true;
        let mut queue: Vec<usize> = gens.to_vec();
        for &g in gens {
            member[g] = true;
        }
        while let Some(x) = queue.pop() {
            let mut grow = Vec::new();
            for w in m.elements() {
                if member[w] {
                    grow.push(m.oplus(x, w));
                }
            }
            for y in m.elements() {
                if m.natural_leq(y, x) {
                    grow.push(y);
                }
            }
            for y in grow {
                if !member[y] {
                    member[y] = true;
                    queue.push(y);
                }
            }
        }
        m.elements().filter(|&x| member[x]).collect()
    };
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier = vec![close(&[])];
    found.insert(frontier[0].clone());
    while let Some(ideal) = frontier.pop() {
        for x in m.elements() {
            if ideal.contains(&x) {
                continue;
            }
            let mut gens = ideal.clone();
            gens.push(x);
            let bigger = close(&gens);
            if found.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    found.into_iter().collect()
}

/// Proper ideals where `meet(x, y)` inside forces `x` or `y` inside.
pub fn prime_ideals(m: &MVAlgebra) -> Vec<Vec<usize>> {
    ideals(m)
        .into_iter()
        .filter(|i| check_prime(m, i).is_ok())
        .collect()
}

fn check_prime(m: &MVAlgebra, ideal: &[usize]) -> Result<()> {
    let not_prime = |detail: String| Error::NotPrime {
        name: m.name().to_string(),
        ideal: ideal.to_vec(),
        detail,
    };
    let member = |x: usize| ideal.contains(&x);
    if !member(m.zero()) {
        return Err(not_prime("it misses 0".into()));
    }
    for &x in ideal {
        if x >= m.size() {
            return Err(not_prime(format!("index {x} out of range")));
        }
        for &y in ideal {
            if !member(m.oplus(x, y)) {
                return Err(not_prime(format!(
                    "not closed under (+) at ({}, {})",
                    m.label(x),
                    m.label(y)
                )));
            }
        }
        for y in m.elements() {
            if m.natural_leq(y, x) && !member(y) {
                return Err(not_prime(format!(
                    "not downward closed: {} <= {}",
                    m.label(y),
                    m.label(x)
                )));
            }
        }
    }
    if member(m.one()) {
        return Err(not_prime("it contains 1, so it is not proper".into()));
    }
    for x in m.elements() {
        for y in m.elements() {
            if member(m.meet(x, y)) && !member(x) && !member(y) {
                return Err(not_prime(format!(
                    "meet({}, {}) falls in without either side",
                    m.label(x),
                    m.label(y)
                )));
            }
        }
    }
    Ok(())
}

/// The prime ideal `{neg x | p x = 1}` attached to a point of the rig form.
pub fn ideal_of_point(m: &MVAlgebra, point: &SpectrumPoint) -> Result<Vec<usize>> {
    let (rig, _) = rig_from_mv(m)?;
    if point.rig() != &rig {
        return Err(Error::Shape(
            "the point belongs to a different rig".into(),
        ));
    }
    let ideal: Vec<usize> = m
        .elements()
        .filter(|&y| point.filter.contains(&m.neg(y)))
        .collect();
    check_prime(m, &ideal)?;
    Ok(ideal)
}

/// The point `p x = 1 iff neg x in I` attached to a prime ideal.
pub fn point_of_ideal(m: &MVAlgebra, ideal: &[usize]) -> Result<SpectrumPoint> {
    check_prime(m, ideal)?;
    let (rig, _) = rig_from_mv(m)?;
    let two = crate::generate::two();
    let map: Vec<usize> = m
        .elements()
        .map(|x| usize::from(ideal.contains(&m.neg(x))))
        .collect();
    let morphism = RigMorphism::new(&rig, &two, map)
        .expect("a prime ideal complements a prime filter");
    Ok(SpectrumPoint::new(morphism))
}

/// The stalk of the rig form at the point of a prime ideal, re-verified to
/// collapse exactly that ideal to 0.
pub fn dubuc_poveda_fiber(m: &MVAlgebra, ideal: &[usize]) -> Result<FiniteRig> {
    let point = point_of_ideal(m, ideal)?;
    let (rig, _) = rig_from_mv(m)?;
    let (fiber, unit) = localize(&rig, &point.filter)?;
    let killed: Vec<usize> = m
        .elements()
        .filter(|&x| unit.apply(x) == fiber.zero())
        .collect();
    assert_eq!(killed, ideal, "the fiber collapses exactly the ideal");
    Ok(fiber)
}
