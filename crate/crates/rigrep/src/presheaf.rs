//! Presheaves of rigs over a finite lattice or poset: a fiber per base
//! element and a restriction morphism per comparable pair, functorial.
//!
//! The sheaf condition is stated on binary joins: sections over `a` and `b`
//! that agree over `a /\ b` amalgamate uniquely over `a \/ b`. Global
//! sections are compatible families; they form a rig under componentwise
//! operations, and over a base with a top they collapse to the top fiber.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rig::{FiniteRig, RigMorphism};
use crate::spectrum::Poset;

/// Index object of a presheaf: a distributive lattice or a bare poset.
#[derive(Debug, Clone, PartialEq)]
pub enum Base {
    Lattice(FiniteRig),
    Poset(Poset),
}

impl Base {
    pub fn size(&self) -> usize {
        match self {
            Base::Lattice(l) => l.size(),
            Base::Poset(p) => p.size(),
        }
    }

    pub fn label(&self, x: usize) -> String {
        match self {
            Base::Lattice(l) => l.label(x).to_string(),
            Base::Poset(p) => p.label(x).to_string(),
        }
    }

    /// Row-major `x <= y` table.
    pub fn leq_table(&self) -> Vec<bool> {
        match self {
            Base::Lattice(l) => l.leq_table(),
            Base::Poset(p) => {
                let n = p.size();
                let mut t = vec![false; n * n];
                for x in 0..n {
                    for y in 0..n {
                        t[x * n + y] = p.leq(x, y);
                    }
                }
                t
            }
        }
    }

    fn descending_order(&self) -> Vec<usize> {
        match self {
            Base::Poset(p) => p.descending_order(),
            Base::Lattice(l) => {
                let leq = l.leq_table();
                let labels = l.elements().map(|x| l.label(x).to_string()).collect();
                Poset::new(labels, leq)
                    .expect("the canonical order of an integral rig is a partial order")
                    .descending_order()
            }
        }
    }
}

/// Fibers indexed by base elements with verified functorial restrictions.
#[derive(Debug, Clone)]
pub struct PresheafOfRigs {
    base: Base,
    fibers: Vec<FiniteRig>,
    restrict: BTreeMap<(usize, usize), RigMorphism>,
}

/// The rig of compatible families, with the family behind each element.
#[derive(Debug, Clone)]
pub struct Sections {
    pub rig: FiniteRig,
    /// `families[i][x]` is the fiber element the `i`-th section picks at `x`.
    pub families: Vec<Vec<usize>>,
}

impl Sections {
    pub fn index_of(&self, family: &[usize]) -> Option<usize> {
        self.families.iter().position(|f| f == family)
    }
}

impl PresheafOfRigs {
    /// `restrict` needs one morphism `fiber(x) -> fiber(y)` per strictly
    /// comparable pair `y < x`; identities are filled in here. Functoriality
    /// over all comparable chains is re-verified.
    pub fn new(
        base: Base,
        fibers: Vec<FiniteRig>,
        mut restrict: BTreeMap<(usize, usize), RigMorphism>,
    ) -> Result<Self> {
        let n = base.size();
        if fibers.len() != n {
            return Err(Error::Shape(format!(
                "{} fibers over a base of {} elements",
                fibers.len(),
                n
            )));
        }
        let leq = base.leq_table();
        for x in 0..n {
            restrict.insert((x, x), RigMorphism::identity(&fibers[x]));
        }
        for key in restrict.keys() {
            if !leq[key.0 * n + key.1] && !leq[key.1 * n + key.0] {
                return Err(Error::Shape(format!(
                    "restriction between incomparable {} and {}",
                    base.label(key.0),
                    base.label(key.1)
                )));
            }
            if !leq[key.1 * n + key.0] {
                return Err(Error::Shape(format!(
                    "restriction runs upward from {} to {}",
                    base.label(key.0),
                    base.label(key.1)
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !leq[y * n + x] {
                    continue;
                }
                let r = restrict.get(&(x, y)).ok_or_else(|| {
                    Error::Shape(format!(
                        "missing restriction from {} to {}",
                        base.label(x),
                        base.label(y)
                    ))
                })?;
                if r.dom() != &fibers[x] || r.cod() != &fibers[y] {
                    return Err(Error::Shape(format!(
                        "restriction from {} to {} connects the wrong fibers",
                        base.label(x),
                        base.label(y)
                    )));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !leq[y * n + x] {
                    continue;
                }
                for z in 0..n {
                    if !leq[z * n + y] {
                        continue;
                    }
                    let via = restrict[&(x, y)]
                        .then(&restrict[&(y, z)])
                        .expect("restrictions along a chain compose");
                    if via.map() != restrict[&(x, z)].map() {
                        return Err(Error::Shape(format!(
                            "restrictions not functorial along {} >= {} >= {}",
                            base.label(x),
                            base.label(y),
                            base.label(z)
                        )));
                    }
                }
            }
        }
        Ok(PresheafOfRigs {
            base,
            fibers,
            restrict,
        })
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn fiber(&self, x: usize) -> &FiniteRig {
        &self.fibers[x]
    }

    pub fn fibers(&self) -> &[FiniteRig] {
        &self.fibers
    }

    /// The morphism `fiber(upper) -> fiber(lower)`.
    pub fn restriction(&self, upper: usize, lower: usize) -> &RigMorphism {
        &self.restrict[&(upper, lower)]
    }

    /// Unique amalgamation over the cover `a \/ b`: sections over `a` and
    /// `b` agreeing over `a /\ b` glue to exactly one section over the join.
    /// Needs a lattice base.
    pub fn sheaf_condition(&self, a: usize, b: usize) -> bool {
        let lattice = match &self.base {
            Base::Lattice(l) => l,
            Base::Poset(_) => panic!("the sheaf condition needs joins, so a lattice base"),
        };
        let d = lattice.add(a, b);
        let m = lattice.mul(a, b);
        let ra = self.restriction(d, a);
        let rb = self.restriction(d, b);
        let am = self.restriction(a, m);
        let bm = self.restriction(b, m);
        for s in self.fibers[a].elements() {
            for t in self.fibers[b].elements() {
                if am.apply(s) != bm.apply(t) {
                    continue;
                }
                let glued = self.fibers[d]
                    .elements()
                    .filter(|&r| ra.apply(r) == s && rb.apply(r) == t)
                    .count();
                if glued != 1 {
                    return false;
                }
            }
        }
        true
    }

    /// The sheaf condition over every ordered pair of lattice elements.
    pub fn is_sheaf(&self) -> Result<bool> {
        let lattice = match &self.base {
            Base::Lattice(l) => l,
            Base::Poset(_) => {
                return Err(Error::Shape(
                    "the sheaf condition needs joins, so a lattice base".into(),
                ))
            }
        };
        for a in lattice.elements() {
            for b in lattice.elements() {
                if !self.sheaf_condition(a, b) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Pull the presheaf back along a lattice morphism into the base:
    /// the fiber over `d` becomes the fiber over `along(d)`.
    pub fn precompose(&self, along: &RigMorphism) -> Result<PresheafOfRigs> {
        let target = match &self.base {
            Base::Lattice(l) => l,
            Base::Poset(_) => {
                return Err(Error::Shape(
                    "precomposition pulls back over a lattice base".into(),
                ))
            }
        };
        if along.cod() != target {
            return Err(Error::Shape(
                "the map does not land in the presheaf's base".into(),
            ));
        }
        along.dom().require_lattice()?;
        let new_base = along.dom().clone();
        let n = new_base.size();
        let leq = new_base.leq_table();
        let fibers: Vec<FiniteRig> = (0..n)
            .map(|d| self.fibers[along.apply(d)].clone())
            .collect();
        let mut restrict = BTreeMap::new();
        for upper in 0..n {
            for lower in 0..n {
                if upper != lower && leq[lower * n + upper] {
                    let r = self
                        .restrict[&(along.apply(upper), along.apply(lower))]
                        .clone();
                    restrict.insert((upper, lower), r);
                }
            }
        }
        PresheafOfRigs::new(Base::Lattice(new_base), fibers, restrict)
    }

    /// Keep only the fibers at `indices`, over the inherited order.
    pub fn restrict_to_poset(&self, indices: &[usize]) -> Result<PresheafOfRigs> {
        let n = self.base.size();
        let leq = self.base.leq_table();
        for &i in indices {
            if i >= n {
                return Err(Error::Shape(format!("base index {i} out of range")));
            }
        }
        let labels = indices.iter().map(|&i| self.base.label(i)).collect();
        let mut table = Vec::with_capacity(indices.len() * indices.len());
        for &a in indices {
            for &b in indices {
                table.push(leq[a * n + b]);
            }
        }
        let poset = Poset::new(labels, table)?;
        let fibers = indices.iter().map(|&i| self.fibers[i].clone()).collect();
        let mut restrict = BTreeMap::new();
        for (x, &ox) in indices.iter().enumerate() {
            for (y, &oy) in indices.iter().enumerate() {
                if x != y && leq[oy * n + ox] {
                    restrict.insert((x, y), self.restrict[&(ox, oy)].clone());
                }
            }
        }
        PresheafOfRigs::new(Base::Poset(poset), fibers, restrict)
    }

    /// The rig of global sections. Over a lattice base every section is the
    /// shadow of its value at the top, so the top fiber is returned with
    /// the families it induces. Over a bare poset the compatible families
    /// are enumerated as a limit, with componentwise operations.
    pub fn global_sections(&self) -> Sections {
        let n = self.base.size();
        let leq = self.base.leq_table();
        if let Base::Lattice(lattice) = &self.base {
            let top = lattice.one();
            let families: Vec<Vec<usize>> = self.fibers[top]
                .elements()
                .map(|s| (0..n).map(|d| self.restriction(top, d).apply(s)).collect())
                .collect();
            return Sections {
                rig: self.fibers[top].clone(),
                families,
            };
        }
        let order = self.base.descending_order();
        let mut families: Vec<Vec<usize>> = Vec::new();
        let mut partial = vec![usize::MAX; n];
        self.enumerate(&order, 0, &leq, &mut partial, &mut families);
        families.sort();
        let index: BTreeMap<&[usize], usize> = families
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        let labels: Vec<String> = families
            .iter()
            .map(|f| {
                let parts: Vec<&str> = f
                    .iter()
                    .enumerate()
                    .map(|(x, &v)| self.fibers[x].label(v))
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let combine = |f: &[usize], g: &[usize], mul: bool| -> usize {
            let h: Vec<usize> = (0..n)
                .map(|x| {
                    if mul {
                        self.fibers[x].mul(f[x], g[x])
                    } else {
                        self.fibers[x].add(f[x], g[x])
                    }
                })
                .collect();
            *index
                .get(h.as_slice())
                .expect("sections are closed under componentwise operations")
        };
        let zero: Vec<usize> = (0..n).map(|x| self.fibers[x].zero()).collect();
        let one: Vec<usize> = (0..n).map(|x| self.fibers[x].one()).collect();
        let rig = FiniteRig::from_fn(
            "sections",
            labels,
            |i, j| combine(&families[i], &families[j], false),
            |i, j| combine(&families[i], &families[j], true),
            index[zero.as_slice()],
            index[one.as_slice()],
        )
        .expect("componentwise operations on compatible families form a rig");
        Sections { rig, families }
    }

    fn enumerate(
        &self,
        order: &[usize],
        depth: usize,
        leq: &[bool],
        partial: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == order.len() {
            out.push(partial.clone());
            return;
        }
        let n = self.base.size();
        let x = order[depth];
        let uppers: Vec<usize> = (0..n)
            .filter(|&y| y != x && leq[x * n + y])
            .collect();
        if uppers.is_empty() {
            for v in self.fibers[x].elements() {
                partial[x] = v;
                self.enumerate(order, depth + 1, leq, partial, out);
            }
            partial[x] = usize::MAX;
            return;
        }
        let forced = self.restrict[&(uppers[0], x)].apply(partial[uppers[0]]);
        let consistent = uppers
            .iter()
            .all(|&y| self.restrict[&(y, x)].apply(partial[y]) == forced);
        if consistent {
            partial[x] = forced;
            self.enumerate(order, depth + 1, leq, partial, out);
            partial[x] = usize::MAX;
        }
    }
}

/// The presheaf `c -> (down-set of c)` over a distributive lattice, with
/// meet against the lower index as restriction. It is a sheaf.
pub fn downset_presheaf(lattice: &FiniteRig) -> Result<PresheafOfRigs> {
    lattice.require_lattice()?;
    let n = lattice.size();
    let leq = lattice.leq_table();
    let built: Vec<(FiniteRig, RigMorphism)> = lattice
        .elements()
        .map(|c| {
            lattice
                .restrict_below(c)
                .expect("every element of a lattice is strongly idempotent")
        })
        .collect();
    let mut restrict = BTreeMap::new();
    for upper in 0..n {
        for lower in 0..n {
            if upper == lower || !leq[lower * n + upper] {
                continue;
            }
            let (ref up_fiber, ref up_map) = built[upper];
            let (ref low_fiber, ref low_map) = built[lower];
            let map: Vec<usize> = up_fiber
                .elements()
                .map(|i| {
                    let x = up_map
                        .map()
                        .iter()
                        .position(|&p| p == i)
                        .expect("down-set projection is surjective");
                    low_map.apply(x)
                })
                .collect();
            restrict.insert((upper, lower), RigMorphism::new(up_fiber, low_fiber, map)?);
        }
    }
    let fibers = built.into_iter().map(|(f, _)| f).collect();
    let presheaf = PresheafOfRigs::new(Base::Lattice(lattice.clone()), fibers, restrict)?;
    assert!(
        presheaf.is_sheaf().expect("the base is a lattice"),
        "down-sets glue along joins"
    );
    Ok(presheaf)
}
