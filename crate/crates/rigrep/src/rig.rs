//! Finite rigs as dense operation tables.
//!
//! A rig here is a finite carrier `0..n` with two commutative monoid tables,
//! addition with unit `zero` and multiplication with unit `one`, where `zero`
//! annihilates and multiplication distributes over addition. Labels exist for
//! presentation only; every algorithm works on indices.
//!
//! The constructors validate every law exhaustively and report the first
//! failure with the law name and the offending cells, so a value of type
//! [`FiniteRig`] is always a rig and a value of type [`RigMorphism`] is
//! always structure preserving.

use crate::error::{Error, Result};

/// A finite rig on carrier `0..size()` with row-major operation tables.
#[derive(Debug, Clone, Eq)]
pub struct FiniteRig {
    name: String,
    labels: Vec<String>,
    n: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
}

/// Equality ignores `name`: two rigs are equal when they have the same
/// labels, tables, and constants.
impl PartialEq for FiniteRig {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.labels == other.labels
            && self.add == other.add
            && self.mul == other.mul
            && self.zero == other.zero
            && self.one == other.one
    }
}

impl FiniteRig {
    /// Build and validate a rig from nested tables.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = labels.len();
        let flatten = |table: Vec<Vec<usize>>, which: &str| -> Result<Vec<usize>> {
            if table.len() != n {
                return Err(Error::Shape(format!(
                    "table `{which}` has {} rows, expected {n}",
                    table.len()
                )));
            }
            let mut flat = Vec::with_capacity(n * n);
            for (i, row) in table.into_iter().enumerate() {
                if row.len() != n {
                    return Err(Error::Shape(format!(
                        "table `{which}` row {i} has {} entries, expected {n}",
                        row.len()
                    )));
                }
                flat.extend(row);
            }
            Ok(flat)
        };
        let add = flatten(add, "add")?;
        let mul = flatten(mul, "mul")?;
        Self::from_flat(name, labels, add, mul, zero, one)
    }

    /// Build and validate a rig from operation closures.
    pub fn from_fn(
        name: impl Into<String>,
        labels: Vec<String>,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = labels.len();
        let mut at = Vec::with_capacity(n * n);
        let mut mt = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                at.push(add(i, j));
                mt.push(mul(i, j));
            }
        }
        Self::from_flat(name, labels, at, mt, zero, one)
    }

    fn from_flat(
        name: impl Into<String>,
        labels: Vec<String>,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let rig = FiniteRig {
            name: name.into(),
            labels,
            n: 0,
            add,
            mul,
            zero,
            one,
        };
        let rig = FiniteRig {
            n: rig.labels.len(),
            ..rig
        };
        rig.check_shape()?;
        rig.check_laws()?;
        Ok(rig)
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Err(Error::Shape("empty carrier".into()));
        }
        for (i, l) in self.labels.iter().enumerate() {
            if self.labels[..i].contains(l) {
                return Err(Error::Shape(format!("duplicate label `{l}`")));
            }
        }
        for (which, table) in [("add", &self.add), ("mul", &self.mul)] {
            if table.len() != n * n {
                return Err(Error::Shape(format!(
                    "table `{which}` has {} cells, expected {}",
                    table.len(),
                    n * n
                )));
            }
            if let Some(&bad) = table.iter().find(|&&v| v >= n) {
                return Err(Error::Shape(format!(
                    "table `{which}` contains index {bad}, carrier has {n} elements"
                )));
            }
        }
        if self.zero >= n || self.one >= n {
            return Err(Error::Shape(format!(
                "constants zero={} one={} out of range for carrier of {n}",
                self.zero, self.one
            )));
        }
        Ok(())
    }

    fn check_laws(&self) -> Result<()> {
        let n = self.n;
        let fail = |law: &'static str, witness: Vec<usize>, lhs: usize, rhs: usize| {
            Err(Error::AxiomViolation {
                law,
                witness: witness.clone(),
                detail: format!(
                    "{} vs {} (at {})",
                    self.labels[lhs],
                    self.labels[rhs],
                    witness
                        .iter()
                        .map(|&i| self.labels[i].as_str())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            })
        };
        for x in 0..n {
            for y in 0..n {
                let (a, b) = (self.add(x, y), self.add(y, x));
                if a != b {
                    return fail("add-commutativity", vec![x, y], a, b);
                }
                let (a, b) = (self.mul(x, y), self.mul(y, x));
                if a != b {
                    return fail("mul-commutativity", vec![x, y], a, b);
                }
            }
        }
        for x in 0..n {
            let a = self.add(self.zero, x);
            if a != x {
                return fail("add-unit", vec![x], a, x);
            }
            let m = self.mul(self.one, x);
            if m != x {
                return fail("mul-unit", vec![x], m, x);
            }
            let z = self.mul(self.zero, x);
            if z != self.zero {
                return fail("zero-annihilation", vec![x], z, self.zero);
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (a, b) = (self.add(self.add(x, y), z), self.add(x, self.add(y, z)));
                    if a != b {
                        return fail("add-associativity", vec![x, y, z], a, b);
                    }
                    let (a, b) = (self.mul(self.mul(x, y), z), self.mul(x, self.mul(y, z)));
                    if a != b {
                        return fail("mul-associativity", vec![x, y, z], a, b);
                    }
                    let (a, b) = (
                        self.mul(self.add(x, y), z),
                        self.add(self.mul(x, z), self.mul(y, z)),
                    );
                    if a != b {
                        return fail("distributivity", vec![x, y, z], a, b);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// A renamed copy; everything else is shared structure.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        FiniteRig {
            name: name.into(),
            ..self.clone()
        }
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

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y]
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y]
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| self.add[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| self.mul[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    /// The one-element rig is the only one with `0 = 1`.
    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    /// `1 + x = 1` for every `x`.
    pub fn is_integral(&self) -> bool {
        self.elements().all(|x| self.add(self.one, x) == self.one)
    }

    /// Error unless integral; used as a precondition check.
    pub(crate) fn require_integral(&self) -> Result<()> {
        match self.elements().find(|&x| self.add(self.one, x) != self.one) {
            None => Ok(()),
            Some(x) => Err(Error::NotIntegral {
                name: self.name.clone(),
                label: self.labels[x].clone(),
            }),
        }
    }

    /// `x <= y` iff `w + x = y` for some `w`, as a fast unchecked table.
    pub(crate) fn leq_table(&self) -> Vec<bool> {
        let n = self.n;
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for w in 0..n {
                leq[x * n + self.add(w, x)] = true;
            }
        }
        leq
    }

    /// The canonical pre-order `x <= y iff w + x = y for some w`, with its
    /// invariants (reflexivity, transitivity, monotonicity of both
    /// operations) re-verified.
    pub fn canonical_order(&self) -> OrderRelation {
        OrderRelation::new(self, self.leq_table())
    }

    /// Elements with a multiplicative inverse. In an integral rig this is
    /// exactly `{1}`.
    pub fn invertible_elements(&self) -> Vec<usize> {
        self.elements()
            .filter(|&x| self.elements().any(|y| self.mul(x, y) == self.one))
            .collect()
    }

    /// `b` divides `a`: some `u` has `b * u = a`.
    pub fn divides(&self, b: usize, a: usize) -> bool {
        self.elements().any(|u| self.mul(b, u) == a)
    }

    /// All ordered pairs `(a, a')` with `a + a' = 1` and `a * a' = 0`.
    pub fn boolean_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.add(a, b) == self.one && self.mul(a, b) == self.zero {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    /// The complement in a Boolean pair is unique when it exists:
    /// from `a+b = a+c = 1`, `ab = ac = 0` follows `b = b(a+c) = bc = c`.
    pub fn complement_of(&self, a: usize) -> Option<usize> {
        self.elements()
            .find(|&b| self.add(a, b) == self.one && self.mul(a, b) == self.zero)
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    /// `a * x = x` for every `x <= a`.
    pub fn is_strongly_idempotent(&self, a: usize) -> bool {
        let leq = self.leq_table();
        self.elements()
            .all(|x| !leq[x * self.n + a] || self.mul(a, x) == x)
    }

    /// The distinct powers `x, x^2, x^3, ...` in exponent order, stopping at
    /// the first repeat.
    pub fn powers(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut p = x;
        while !seen[p] {
            seen[p] = true;
            out.push(p);
            p = self.mul(p, x);
        }
        out
    }

    /// `x^k` for `k >= 1`, reducing the exponent through the cycle of the
    /// power sequence so arbitrarily large `k` stay cheap.
    pub fn power(&self, x: usize, k: usize) -> usize {
        assert!(k >= 1, "power exponent must be at least 1");
        let mut seq = Vec::new();
        let mut pos = vec![usize::MAX; self.n];
        let mut p = x;
        loop {
            if pos[p] != usize::MAX {
                // seq[pos[p]..] repeats with period seq.len() - pos[p]
                let pre = pos[p];
                let period = seq.len() - pre;
                let idx = if k - 1 < seq.len() {
                    k - 1
                } else {
                    pre + (k - 1 - pre) % period
                };
                return seq[idx];
            }
            pos[p] = seq.len();
            seq.push(p);
            if seq.len() >= k {
                return seq[k - 1];
            }
            p = self.mul(p, x);
        }
    }

    /// Some power of `x` is `0`.
    pub fn is_nilpotent(&self, x: usize) -> bool {
        self.powers(x).contains(&self.zero)
    }

    /// Non-trivial, and `x + y = 1` forces `x = 1` or `y = 1`. The trivial
    /// rig is not really local.
    pub fn is_really_local(&self) -> bool {
        if self.is_trivial() {
            return false;
        }
        for x in self.elements() {
            for y in self.elements() {
                if self.add(x, y) == self.one && x != self.one && y != self.one {
                    return false;
                }
            }
        }
        true
    }

    /// A distributive lattice is exactly a rig with `x * x = x` and
    /// `1 + x = 1`; join is addition and meet is multiplication.
    pub fn is_distributive_lattice(&self) -> bool {
        self.is_integral() && self.elements().all(|x| self.is_idempotent(x))
    }

    pub(crate) fn require_lattice(&self) -> Result<()> {
        if let Some(x) = self.elements().find(|&x| self.add(self.one, x) != self.one) {
            return Err(Error::NotLattice {
                name: self.name.clone(),
                detail: format!("1 + {} != 1", self.labels[x]),
            });
        }
        if let Some(x) = self.elements().find(|&x| !self.is_idempotent(x)) {
            return Err(Error::NotLattice {
                name: self.name.clone(),
                detail: format!("{0} * {0} != {0}", self.labels[x]),
            });
        }
        Ok(())
    }

    /// Componentwise product with its two projections.
    pub fn product(a: &FiniteRig, b: &FiniteRig) -> (FiniteRig, RigMorphism, RigMorphism) {
        let (na, nb) = (a.n, b.n);
        let labels: Vec<String> = (0..na * nb)
            .map(|i| format!("({},{})", a.labels[i / nb], b.labels[i % nb]))
            .collect();
        let rig = FiniteRig::from_fn(
            format!("{}x{}", a.name, b.name),
            labels,
            |x, y| a.add(x / nb, y / nb) * nb + b.add(x % nb, y % nb),
            |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb),
            a.zero * nb + b.zero,
            a.one * nb + b.one,
        )
        .expect("product of valid rigs is valid");
        let p1 = RigMorphism::new(&rig, a, (0..na * nb).map(|x| x / nb).collect())
            .expect("first projection is a morphism");
        let p2 = RigMorphism::new(&rig, b, (0..na * nb).map(|x| x % nb).collect())
            .expect("second projection is a morphism");
        (rig, p1, p2)
    }

    /// The sub-rig on `{x | x <= a}` with unit `a`, together with the
    /// surjection `x -> a * x`. Needs an integral rig and a strongly
    /// idempotent `a`; then the down-set is closed under both operations.
    pub fn restrict_below(&self, a: usize) -> Result<(FiniteRig, RigMorphism)> {
        self.require_integral()?;
        if !self.is_strongly_idempotent(a) {
            return Err(Error::NotStronglyIdempotent {
                name: self.name.clone(),
                label: self.labels[a].clone(),
            });
        }
        let leq = self.leq_table();
        let carrier: Vec<usize> = self.elements().filter(|&x| leq[x * self.n + a]).collect();
        let pos = |x: usize| -> usize {
            carrier
                .binary_search(&x)
                .expect("down-set is closed under the operations")
        };
        let labels = carrier.iter().map(|&x| self.labels[x].clone()).collect();
        let rig = FiniteRig::from_fn(
            format!("{}[<={}]", self.name, self.labels[a]),
            labels,
            |x, y| pos(self.add(carrier[x], carrier[y])),
            |x, y| pos(self.mul(carrier[x], carrier[y])),
            pos(self.zero),
            pos(a),
        )?;
        let map = self.elements().map(|x| pos(self.mul(a, x))).collect();
        let onto = RigMorphism::new(self, &rig, map)?;
        Ok((rig, onto))
    }

    /// Split an integral rig along a Boolean element: `x -> (a*x, a'*x)` is
    /// an isomorphism onto the product of the two down-set rigs.
    pub fn decompose_by_boolean(&self, a: usize) -> Result<BooleanDecomposition> {
        self.require_integral()?;
        let comp = self.complement_of(a).ok_or_else(|| Error::NotBoolean {
            name: self.name.clone(),
            label: self.labels[a].clone(),
        })?;
        // Boolean elements are strongly idempotent, so restrict_below applies.
        let (left, to_left) = self.restrict_below(a)?;
        let (right, to_right) = self.restrict_below(comp)?;
        let (product, _, _) = FiniteRig::product(&left, &right);
        let nb = right.size();
        let map = self
            .elements()
            .map(|x| to_left.apply(x) * nb + to_right.apply(x))
            .collect();
        let iso = RigMorphism::new(self, &product, map)?;
        assert!(
            iso.is_bijective(),
            "pairing with a Boolean complement must be an isomorphism"
        );
        Ok(BooleanDecomposition {
            complement: comp,
            left,
            right,
            iso,
            product,
        })
    }
}

/// Outcome of splitting a rig along a Boolean element.
#[derive(Debug, Clone)]
pub struct BooleanDecomposition {
    /// The complement of the chosen element.
    pub complement: usize,
    /// Down-set rig below the chosen element.
    pub left: FiniteRig,
    /// Down-set rig below the complement.
    pub right: FiniteRig,
    /// The isomorphism from the source onto `left x right`.
    pub iso: RigMorphism,
    pub product: FiniteRig,
}

/// The canonical pre-order of a rig: `x <= y` iff `w + x = y` for some `w`.
///
/// Always reflexive and transitive with both operations monotone; these are
/// re-verified on construction. Antisymmetry holds whenever addition is
/// idempotent, which is automatic in integral rigs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderRelation {
    n: usize,
    leq: Vec<bool>,
}

impl OrderRelation {
    fn new(rig: &FiniteRig, leq: Vec<bool>) -> Self {
        let n = rig.size();
        let at = |x: usize, y: usize| leq[x * n + y];
        for x in 0..n {
            assert!(at(x, x), "canonical order must be reflexive");
        }
        for x in 0..n {
            for y in 0..n {
                if !at(x, y) {
                    continue;
                }
                for z in 0..n {
                    if at(y, z) {
                        assert!(at(x, z), "canonical order must be transitive");
                    }
                }
                for z in 0..n {
                    assert!(
                        at(rig.add(x, z), rig.add(y, z)),
                        "addition must be monotone"
                    );
                    assert!(
                        at(rig.mul(x, z), rig.mul(y, z)),
                        "multiplication must be monotone"
                    );
                }
            }
        }
        OrderRelation { n, leq }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n)
            .all(|x| (0..self.n).all(|y| !(self.leq(x, y) && self.leq(y, x)) || x == y))
    }

    pub fn is_total(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.leq(x, y) || self.leq(y, x)))
    }

    /// Pairs `(x, y)` where `y` covers `x`: `x < y` with nothing strictly
    /// between. Assumes antisymmetry.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let strictly = |x: usize, y: usize| x != y && self.leq(x, y);
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if strictly(x, y) && !(0..self.n).any(|z| strictly(x, z) && strictly(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// A verified rig morphism: preserves both units and both operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigMorphism {
    dom: FiniteRig,
    cod: FiniteRig,
    map: Vec<usize>,
}

impl RigMorphism {
    pub fn new(dom: &FiniteRig, cod: &FiniteRig, map: Vec<usize>) -> Result<Self> {
        if map.len() != dom.size() {
            return Err(Error::Shape(format!(
                "morphism map has {} entries, domain has {}",
                map.len(),
                dom.size()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= cod.size()) {
            return Err(Error::Shape(format!(
                "morphism map hits index {bad}, codomain has {} elements",
                cod.size()
            )));
        }
        if map[dom.zero()] != cod.zero() {
            return Err(Error::NotMorphism(format!(
                "zero maps to {}, not {}",
                cod.label(map[dom.zero()]),
                cod.label(cod.zero())
            )));
        }
        if map[dom.one()] != cod.one() {
            return Err(Error::NotMorphism(format!(
                "one maps to {}, not {}",
                cod.label(map[dom.one()]),
                cod.label(cod.one())
            )));
        }
        for x in dom.elements() {
            for y in dom.elements() {
                if map[dom.add(x, y)] != cod.add(map[x], map[y]) {
                    return Err(Error::NotMorphism(format!(
                        "addition not preserved at ({}, {})",
                        dom.label(x),
                        dom.label(y)
                    )));
                }
                if map[dom.mul(x, y)] != cod.mul(map[x], map[y]) {
                    return Err(Error::NotMorphism(format!(
                        "multiplication not preserved at ({}, {})",
                        dom.label(x),
                        dom.label(y)
                    )));
                }
            }
        }
        Ok(RigMorphism {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        })
    }

    pub fn identity(rig: &FiniteRig) -> Self {
        RigMorphism {
            dom: rig.clone(),
            cod: rig.clone(),
            map: rig.elements().collect(),
        }
    }

    pub fn dom(&self) -> &FiniteRig {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteRig {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Composition `self` then `g`.
    pub fn then(&self, g: &RigMorphism) -> Result<RigMorphism> {
        if self.cod != g.dom {
            return Err(Error::Shape(format!(
                "cannot compose: codomain `{}` differs from domain `{}`",
                self.cod.name(),
                g.dom.name()
            )));
        }
        RigMorphism::new(
            &self.dom,
            &g.cod,
            self.map.iter().map(|&x| g.map[x]).collect(),
        )
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_surjective()
    }

    pub fn inverse(&self) -> Result<RigMorphism> {
        if !self.is_bijective() {
            return Err(Error::Shape(format!(
                "morphism `{}` -> `{}` is not bijective",
                self.dom.name(),
                self.cod.name()
            )));
        }
        let mut inv = vec![0; self.cod.size()];
        for (x, &v) in self.map.iter().enumerate() {
            inv[v] = x;
        }
        RigMorphism::new(&self.cod, &self.dom, inv)
    }

    /// Sorted image of the map.
    pub fn image(&self) -> Vec<usize> {
        let mut seen = vec![false; self.cod.size()];
        for &v in &self.map {
            seen[v] = true;
        }
        (0..self.cod.size()).filter(|&v| seen[v]).collect()
    }

    /// Local: the preimage of the invertibles is exactly the invertibles.
    pub fn is_local(&self) -> bool {
        let inv_cod = self.cod.invertible_elements();
        let preimage: Vec<usize> = self
            .dom
            .elements()
            .filter(|&x| inv_cod.contains(&self.map[x]))
            .collect();
        preimage == self.dom.invertible_elements()
    }

    /// Least domain index mapping to `target`, if any.
    pub fn least_preimage(&self, target: usize) -> Option<usize> {
        self.map.iter().position(|&v| v == target)
    }
}
