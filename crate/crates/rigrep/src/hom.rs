//! Morphism enumeration and factorization through quotients.

use crate::error::{Error, Result};
use crate::rig::{FiniteRig, RigMorphism};

/// Enumerate every rig morphism from `a` to `b`, in lexicographic order of
/// the underlying map.
///
/// Backtracking search: zero and one are assigned first, then the least
/// unassigned element is branched on with candidate values in index order.
/// Each assignment propagates forced values through both tables, so
/// contradictions surface long before maps are complete.
pub fn enumerate_homs(a: &FiniteRig, b: &FiniteRig) -> Vec<RigMorphism> {
    let mut search = Search {
        a,
        b,
        map: vec![usize::MAX; a.size()],
        trail: Vec::new(),
        found: Vec::new(),
    };
    let mark = search.trail.len();
    if search.assign(a.zero(), b.zero()) && search.assign(a.one(), b.one()) {
        search.run();
    }
    search.undo_to(mark);
    let mut found = search.found;
    found.sort();
    found
        .into_iter()
        .map(|map| RigMorphism::new(a, b, map).expect("search result must be a morphism"))
        .collect()
}

struct Search<'r> {
    a: &'r FiniteRig,
    b: &'r FiniteRig,
    map: Vec<usize>,
    trail: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Set `map[e] = v` and propagate consequences. Returns false on
    /// contradiction, leaving cleanup to `undo_to`.
    fn assign(&mut self, e: usize, v: usize) -> bool {
        if self.map[e] != usize::MAX {
            return self.map[e] == v;
        }
        self.map[e] = v;
        self.trail.push(e);
        let mut queue = self.trail.len() - 1;
        while queue < self.trail.len() {
            let q = self.trail[queue];
            queue += 1;
            // Pair q with everything currently assigned, itself included.
            for i in 0..self.trail.len() {
                let x = self.trail[i];
                let pairs = [
                    (self.a.add(q, x), self.b.add(self.map[q], self.map[x])),
                    (self.a.mul(q, x), self.b.mul(self.map[q], self.map[x])),
                ];
                for (src, want) in pairs {
                    if self.map[src] == usize::MAX {
                        self.map[src] = want;
                        self.trail.push(src);
                    } else if self.map[src] != want {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().expect("trail is non-empty");
            self.map[e] = usize::MAX;
        }
    }

    fn run(&mut self) {
        match (0..self.a.size()).find(|&e| self.map[e] == usize::MAX) {
            None => self.found.push(self.map.clone()),
            Some(e) => {
                for v in 0..self.b.size() {
                    let mark = self.trail.len();
                    if self.assign(e, v) {
                        self.run();
                    }
                    self.undo_to(mark);
                }
            }
        }
    }
}

/// Factor `f` through the surjection `p`: the unique `g` with `g . p = f`,
/// or `NoSuchFactorization` when `p` merges elements that `f` separates.
pub fn factor_through(p: &RigMorphism, f: &RigMorphism) -> Result<RigMorphism> {
    if p.dom() != f.dom() {
        return Err(Error::Shape(format!(
            "factor_through needs a common domain, got `{}` and `{}`",
            p.dom().name(),
            f.dom().name()
        )));
    }
    if !p.is_surjective() {
        return Err(Error::Shape(format!(
            "factor_through needs a surjection, `{}` -> `{}` is not one",
            p.dom().name(),
            p.cod().name()
        )));
    }
    let mut g = vec![usize::MAX; p.cod().size()];
    for x in p.dom().elements() {
        let q = p.apply(x);
        if g[q] == usize::MAX {
            g[q] = f.apply(x);
        } else if g[q] != f.apply(x) {
            return Err(Error::NoSuchFactorization(format!(
                "`{}` identifies {} with an element that `{}` separates",
                p.cod().name(),
                p.dom().label(x),
                f.cod().name()
            )));
        }
    }
    RigMorphism::new(p.cod(), f.cod(), g)
}

/// Two surjections out of the same rig with equal kernels induce an
/// isomorphism between their targets, commuting with both.
pub fn induced_iso(p: &RigMorphism, q: &RigMorphism) -> Result<RigMorphism> {
    let iso = factor_through(p, q)?;
    if !iso.is_bijective() {
        return Err(Error::NoSuchFactorization(format!(
            "`{}` and `{}` have different kernels",
            p.cod().name(),
            q.cod().name()
        )));
    }
    Ok(iso)
}
