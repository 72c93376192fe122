//! Points of an integral rig and Birkhoff duality for finite distributive
//! lattices.
//!
//! A point is a morphism into the two-element lattice; its filter is the
//! preimage of the top. For a finite distributive lattice the points
//! correspond exactly to join-irreducible elements: the point of `j` sends
//! `d` to top iff `j <= d`, and a point is recovered from the least element
//! of its filter.

use crate::error::{Error, Result};
use crate::hom::enumerate_homs;
use crate::rig::{FiniteRig, RigMorphism};

/// A finite poset: reflexive, antisymmetric, transitive, all re-verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    n: usize,
    leq: Vec<bool>,
}

impl Poset {
    pub fn new(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n * n {
            return Err(Error::Shape(format!(
                "order table has {} cells, expected {}",
                leq.len(),
                n * n
            )));
        }
        let at = |x: usize, y: usize| leq[x * n + y];
        for x in 0..n {
            if !at(x, x) {
                return Err(Error::Shape(format!("order not reflexive at {x}")));
            }
            for y in 0..n {
                if x != y && at(x, y) && at(y, x) {
                    return Err(Error::Shape(format!(
                        "order not antisymmetric at ({x}, {y})"
                    )));
                }
                for z in 0..n {
                    if at(x, y) && at(y, z) && !at(x, z) {
                        return Err(Error::Shape(format!(
                            "order not transitive at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(Poset { labels, n, leq })
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

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| (0..self.n).all(|y| y == x || !self.leq(x, y)))
            .collect()
    }

    /// Indices ordered so that every element appears after everything above
    /// it; ties broken by index.
    pub fn descending_order(&self) -> Vec<usize> {
        let mut placed = vec![false; self.n];
        let mut out = Vec::with_capacity(self.n);
        while out.len() < self.n {
            let next = (0..self.n)
                .find(|&x| {
                    !placed[x]
                        && (0..self.n).all(|y| y == x || placed[y] || !self.leq(x, y))
                })
                .expect("a finite order always has a maximal element left");
            placed[next] = true;
            out.push(next);
        }
        out
    }

    /// Pairs `(x, y)` where `y` covers `x`.
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

/// A morphism into the two-element lattice together with its filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumPoint {
    pub morphism: RigMorphism,
    /// Sorted preimage of the top; a prime, multiplicative, upward-closed
    /// set containing `1` and excluding `0`.
    pub filter: Vec<usize>,
}

impl SpectrumPoint {
    pub fn new(morphism: RigMorphism) -> Self {
        let rig = morphism.dom().clone();
        let top = morphism.cod().one();
        let filter: Vec<usize> = rig.elements().filter(|&x| morphism.apply(x) == top).collect();
        assert!(filter.contains(&rig.one()), "filter must contain one");
        assert!(!filter.contains(&rig.zero()), "filter must exclude zero");
        let n = rig.size();
        let leq = rig.leq_table();
        for &x in &filter {
            for y in rig.elements() {
                if leq[x * n + y] {
                    assert!(filter.contains(&y), "filter must be upward closed");
                }
            }
            for &y in &filter {
                assert!(
                    filter.contains(&rig.mul(x, y)),
                    "filter must be multiplicative"
                );
            }
        }
        for x in rig.elements() {
            for y in rig.elements() {
                if filter.contains(&rig.add(x, y)) {
                    assert!(
                        filter.contains(&x) || filter.contains(&y),
                        "filter must be prime"
                    );
                }
            }
        }
        SpectrumPoint { morphism, filter }
    }

    pub fn rig(&self) -> &FiniteRig {
        self.morphism.dom()
    }
}

/// All points of `rig`, in lexicographic order of the underlying maps.
/// The trivial rig has none.
pub fn spectrum(rig: &FiniteRig) -> Vec<SpectrumPoint> {
    enumerate_homs(rig, &crate::generate::two())
        .into_iter()
        .map(SpectrumPoint::new)
        .collect()
}

/// Elements that are not the bottom and not a join of two strictly smaller
/// elements.
pub fn join_irreducibles(lattice: &FiniteRig) -> Vec<usize> {
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

/// The join-irreducibles with the inherited order.
pub fn irreducible_poset(lattice: &FiniteRig) -> Result<Poset> {
    let irr = join_irreducibles(lattice);
    let leq = lattice.leq_table();
    let labels = irr.iter().map(|&j| lattice.label(j).to_string()).collect();
    let mut table = Vec::with_capacity(irr.len() * irr.len());
    for &a in &irr {
        for &b in &irr {
            table.push(leq[a * lattice.size() + b]);
        }
    }
    Poset::new(labels, table)
}

/// The two mutually inverse directions of Birkhoff duality for one finite
/// distributive lattice.
#[derive(Debug, Clone)]
pub struct Birkhoff {
    pub irreducibles: Vec<usize>,
    pub points: Vec<SpectrumPoint>,
    /// Position in `points` of the point of each irreducible.
    pub point_of_irreducible: Vec<usize>,
    /// Position in `irreducibles` of the generator of each point's filter.
    pub irreducible_of_point: Vec<usize>,
}

/// Match join-irreducibles with spectrum points: `j` gives the point
/// `d -> (j <= d)`, and a point returns the least element of its filter.
/// Both round trips are verified to be identities.
pub fn birkhoff(lattice: &FiniteRig) -> Result<Birkhoff> {
    lattice.require_lattice()?;
    let irreducibles = join_irreducibles(lattice);
    let points = spectrum(lattice);
    let n = lattice.size();
    let leq = lattice.leq_table();
    let point_of_irreducible: Vec<usize> = irreducibles
        .iter()
        .map(|&j| {
            let map: Vec<usize> = lattice
                .elements()
                .map(|d| usize::from(leq[j * n + d]))
                .collect();
            points
                .iter()
                .position(|p| p.morphism.map() == map)
                .expect("the point of a join-irreducible is a morphism")
        })
        .collect();
    let irreducible_of_point: Vec<usize> = points
        .iter()
        .map(|p| {
            let least = p
                .filter
                .iter()
                .copied()
                .find(|&m| p.filter.iter().all(|&f| leq[m * n + f]))
                .expect("a prime filter of a finite distributive lattice is principal");
            irreducibles
                .iter()
                .position(|&j| j == least)
                .expect("the generator of a prime filter is join-irreducible")
        })
        .collect();
    for (k, &pi) in point_of_irreducible.iter().enumerate() {
        assert_eq!(irreducible_of_point[pi], k, "duality must be a bijection");
    }
    for (i, &jk) in irreducible_of_point.iter().enumerate() {
        assert_eq!(point_of_irreducible[jk], i, "duality must be a bijection");
    }
    Ok(Birkhoff {
        irreducibles,
        points,
        point_of_irreducible,
        irreducible_of_point,
    })
}

/// Indices of the points whose filter contains `x`.
pub fn basic_open(points: &[SpectrumPoint], x: usize) -> Vec<usize> {
    points
        .iter()
        .enumerate()
        .filter(|(_, p)| p.filter.contains(&x))
        .map(|(i, _)| i)
        .collect()
}

/// All ordered pairs `(a, b)` with `a + b = d`, lexicographically.
pub fn binary_covers(lattice: &FiniteRig, d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in lattice.elements() {
        for b in lattice.elements() {
            if lattice.add(a, b) == d {
                out.push((a, b));
            }
        }
    }
    out
}
