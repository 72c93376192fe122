//! Brute-force oracles shared by the integration suites.
//!
//! Everything here recomputes results by plain exhaustive enumeration, so
//! the library's pruned searches can be compared against implementations
//! too simple to be wrong. Keep these slow and obvious.

#![allow(dead_code)]

use rigrep::mv::MVAlgebra;
use rigrep::FiniteRig;
use std::sync::OnceLock;

/// Every function {0..dom-1} -> {0..cod-1} as a vector, in odometer
/// (lexicographic) order. Callers keep cod^dom small.
pub fn all_maps(dom: usize, cod: usize) -> Vec<Vec<usize>> {
    let total = cod.checked_pow(dom as u32).expect("oracle domain too big");
    let mut out = Vec::with_capacity(total);
    let mut m = vec![0usize; dom];
    loop {
        out.push(m.clone());
        let mut i = dom;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            m[i] += 1;
            if m[i] < cod {
                break;
            }
            m[i] = 0;
        }
    }
}

/// The morphism laws checked directly on a candidate map.
pub fn is_morphism_map(a: &FiniteRig, b: &FiniteRig, m: &[usize]) -> bool {
    if m[a.zero()] != b.zero() || m[a.one()] != b.one() {
        return false;
    }
    for x in a.elements() {
        for y in a.elements() {
            if m[a.add(x, y)] != b.add(m[x], m[y]) || m[a.mul(x, y)] != b.mul(m[x], m[y]) {
                return false;
            }
        }
    }
    true
}

/// All rig morphisms `a -> b` found by filtering every map.
pub fn oracle_homs(a: &FiniteRig, b: &FiniteRig) -> Vec<Vec<usize>> {
    all_maps(a.size(), b.size())
        .into_iter()
        .filter(|m| is_morphism_map(a, b, m))
        .collect()
}

/// All partitions of {0..n-1} as least-representative class maps:
/// class_of[x] is the smallest member of x's class. Generated from
/// restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn step(rgs: &mut Vec<usize>, at: usize, max_used: usize, out: &mut Vec<Vec<usize>>) {
        if at == rgs.len() {
            let mut first = vec![usize::MAX; rgs.len()];
            let class_of = rgs
                .iter()
                .enumerate()
                .map(|(x, &c)| {
                    if first[c] == usize::MAX {
                        first[c] = x;
                    }
                    first[c]
                })
                .collect();
            out.push(class_of);
            return;
        }
        for c in 0..=max_used + 1 {
            rgs[at] = c;
            step(rgs, at + 1, max_used.max(c), out);
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    step(&mut rgs, 1, 0, &mut out);
    out
}

/// Congruence compatibility checked pairwise with no transitivity
/// shortcut: every related pair must stay related after adding or
/// multiplying both sides by any element.
pub fn is_congruence_map(rig: &FiniteRig, class_of: &[usize]) -> bool {
    for x in rig.elements() {
        for y in rig.elements() {
            if class_of[x] != class_of[y] {
                continue;
            }
            for z in rig.elements() {
                if class_of[rig.add(x, z)] != class_of[rig.add(y, z)]
                    || class_of[rig.mul(x, z)] != class_of[rig.mul(y, z)]
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Every congruence of the rig, by filtering every partition.
pub fn oracle_congruences(rig: &FiniteRig) -> Vec<Vec<usize>> {
    all_partitions(rig.size())
        .into_iter()
        .filter(|p| is_congruence_map(rig, p))
        .collect()
}

/// `x <= y` in the canonical pre-order, recomputed from the definition.
pub fn oracle_leq(rig: &FiniteRig, x: usize, y: usize) -> bool {
    rig.elements().any(|w| rig.add(w, x) == y)
}

/// Join-irreducible lattice elements by direct scan: non-bottom and
/// never a join of two strictly smaller elements.
pub fn oracle_join_irreducibles(lattice: &FiniteRig) -> Vec<usize> {
    lattice
        .elements()
        .filter(|&j| {
            j != lattice.zero()
                && lattice.elements().all(|a| {
                    lattice
                        .elements()
                        .all(|b| lattice.add(a, b) != j || a == j || b == j)
                })
        })
        .collect()
}

/// All ideals of an MV-algebra by powerset filtering: contains 0, closed
/// under oplus, downward closed in the natural order.
pub fn oracle_ideals(m: &MVAlgebra) -> Vec<Vec<usize>> {
    let n = m.size();
    assert!(n <= 20, "powerset oracle meant for small algebras");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & (1 << m.zero()) == 0 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&x| mask & (1 << x) != 0).collect();
        let closed = members
            .iter()
            .all(|&x| members.iter().all(|&y| mask & (1 << m.oplus(x, y)) != 0));
        let down = members
            .iter()
            .all(|&x| (0..n).all(|y| !m.natural_leq(y, x) || mask & (1 << y) != 0));
        if closed && down {
            out.push(members);
        }
    }
    out
}

/// Prime ideals by filtering the ideal oracle: proper, and a meet lands
/// inside only if one of its arguments does.
pub fn oracle_prime_ideals(m: &MVAlgebra) -> Vec<Vec<usize>> {
    oracle_ideals(m)
        .into_iter()
        .filter(|i| {
            i.len() < m.size()
                && m.elements().all(|x| {
                    m.elements().all(|y| {
                        !i.contains(&m.meet(x, y)) || i.contains(&x) || i.contains(&y)
                    })
                })
        })
        .collect()
}

/// The full acceptance catalog, built once per test binary.
pub fn catalog() -> &'static [FiniteRig] {
    static C: OnceLock<Vec<FiniteRig>> = OnceLock::new();
    C.get_or_init(rigrep::generate::full_catalog)
}

/// Catalog members with at most `k` elements.
pub fn catalog_le(k: usize) -> Vec<&'static FiniteRig> {
    catalog().iter().filter(|r| r.size() <= k).collect()
}
