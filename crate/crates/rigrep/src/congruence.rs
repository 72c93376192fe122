//! Congruences on finite rigs and their quotients.
//!
//! A congruence is stored as `class_of`: each element maps to the least
//! index of its class. Construction always re-verifies that the partition
//! is compatible with both operations, so holding a `Congruence` is proof
//! of congruence-hood, not just of being a partition.

use crate::error::{Error, Result};
use crate::rig::{FiniteRig, RigMorphism};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    rig: FiniteRig,
    class_of: Vec<usize>,
}

impl Congruence {
    /// Wrap and verify a representative map. `class_of[x]` must be the
    /// least element of the class of `x`.
    pub fn new(rig: &FiniteRig, class_of: Vec<usize>) -> Result<Self> {
        let n = rig.size();
        if class_of.len() != n {
            return Err(Error::Shape(format!(
                "class map has {} entries, carrier has {n}",
                class_of.len()
            )));
        }
        for x in 0..n {
            let r = class_of[x];
            if r >= n || r > x || class_of[r] != r {
                return Err(Error::Shape(format!(
                    "class map is not least-representative at index {x}"
                )));
            }
        }
        // Compatibility: substituting an element by its representative must
        // not change the class of any sum or product. One argument suffices
        // because the tables are commutative, and chains of substitutions
        // cover the general pairwise statement by transitivity.
        for x in 0..n {
            let r = class_of[x];
            if r == x {
                continue;
            }
            for z in 0..n {
                if class_of[rig.add(x, z)] != class_of[rig.add(r, z)] {
                    return Err(Error::Shape(format!(
                        "partition not compatible with addition at ({}, {})",
                        rig.label(x),
                        rig.label(z)
                    )));
                }
                if class_of[rig.mul(x, z)] != class_of[rig.mul(r, z)] {
                    return Err(Error::Shape(format!(
                        "partition not compatible with multiplication at ({}, {})",
                        rig.label(x),
                        rig.label(z)
                    )));
                }
            }
        }
        Ok(Congruence {
            rig: rig.clone(),
            class_of,
        })
    }

    /// The least congruence containing the given pairs: union-find closure,
    /// re-deriving `(x+z, y+z)` and `(x*z, y*z)` for every merge.
    pub fn from_pairs(rig: &FiniteRig, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = rig.size();
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::Shape(format!(
                    "pair ({x}, {y}) out of range for carrier of {n}"
                )));
            }
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut queue: Vec<(usize, usize)> = pairs.to_vec();
        while let Some((x, y)) = queue.pop() {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx == ry {
                continue;
            }
            // Keep the smaller index as root so representatives stay least.
            let (lo, hi) = (rx.min(ry), rx.max(ry));
            parent[hi] = lo;
            for z in 0..n {
                queue.push((rig.add(x, z), rig.add(y, z)));
                queue.push((rig.mul(x, z), rig.mul(y, z)));
            }
        }
        let class_of = (0..n).map(|x| find(&mut parent, x)).collect();
        Self::new(rig, class_of)
    }

    /// The kernel of a morphism: `x ~ y` iff `f(x) = f(y)`.
    pub fn kernel(f: &RigMorphism) -> Self {
        let n = f.dom().size();
        let class_of = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| f.apply(y) == f.apply(x))
                    .expect("x relates to itself")
            })
            .collect();
        Self::new(f.dom(), class_of).expect("kernel of a morphism is a congruence")
    }

    /// The join with another congruence on the same rig: the least
    /// congruence containing both.
    pub fn join(&self, other: &Congruence) -> Result<Congruence> {
        if self.rig != other.rig {
            return Err(Error::Shape(
                "join needs congruences on the same rig".into(),
            ));
        }
        let pairs: Vec<(usize, usize)> = (0..self.rig.size())
            .flat_map(|x| [(x, self.class_of[x]), (x, other.class_of[x])])
            .collect();
        Congruence::from_pairs(&self.rig, &pairs)
    }

    pub fn rig(&self) -> &FiniteRig {
        &self.rig
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    pub fn representative(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// Sorted class representatives; these become the quotient carrier.
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.rig.size())
            .filter(|&x| self.class_of[x] == x)
            .collect()
    }

    /// Class members of the class of `x`, sorted.
    pub fn class_members(&self, x: usize) -> Vec<usize> {
        let r = self.class_of[x];
        (0..self.rig.size())
            .filter(|&y| self.class_of[y] == r)
            .collect()
    }

    pub fn class_count(&self) -> usize {
        self.representatives().len()
    }

    pub fn is_identity(&self) -> bool {
        self.class_of.iter().enumerate().all(|(x, &r)| x == r)
    }

    /// The quotient rig with re-validated tables, plus the projection.
    pub fn quotient(&self) -> Result<(FiniteRig, RigMorphism)> {
        let reps = self.representatives();
        let pos = |x: usize| -> usize {
            reps.binary_search(&self.class_of[x])
                .expect("representative is in the carrier")
        };
        let labels = reps.iter().map(|&r| self.rig.label(r).to_string()).collect();
        let q = FiniteRig::from_fn(
            format!("{}/~", self.rig.name()),
            labels,
            |i, j| pos(self.rig.add(reps[i], reps[j])),
            |i, j| pos(self.rig.mul(reps[i], reps[j])),
            pos(self.rig.zero()),
            pos(self.rig.one()),
        )?;
        let proj = RigMorphism::new(&self.rig, &q, (0..self.rig.size()).map(pos).collect())?;
        Ok((q, proj))
    }
}
