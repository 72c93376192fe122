//! Stock algebras, the working catalogs, and the seeded random search.
//!
//! Structured generators are deterministic. The random generator runs a
//! seeded backtracking search over operation tables, so the same seed always
//! lands on the same rig, and an unsatisfiable side constraint exhausts the
//! search instead of looping.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mv::{mv_from_rig, MVAlgebra};
use crate::rig::FiniteRig;
use crate::spectrum::Poset;

/// The one-element rig, where 0 = 1.
pub fn trivial() -> FiniteRig {
    FiniteRig::from_fn("trivial", vec!["*".into()], |_, _| 0, |_, _| 0, 0, 0)
        .expect("one point satisfies every equation")
}

/// The two-element lattice of truth values.
pub fn two() -> FiniteRig {
    FiniteRig::from_fn(
        "2",
        vec!["0".into(), "1".into()],
        |x, y| x.max(y),
        |x, y| x.min(y),
        0,
        1,
    )
    .expect("truth values form a lattice")
}

/// The chain lattice on `n` elements: add is max, mul is min.
pub fn chain(n: usize) -> FiniteRig {
    assert!(n >= 1, "a chain needs at least one element");
    let labels = (0..n)
        .map(|i| {
            if i == 0 {
                "0".into()
            } else if i == n - 1 {
                "1".into()
            } else {
                format!("c{i}")
            }
        })
        .collect();
    FiniteRig::from_fn(format!("C{n}"), labels, |x, y| x.max(y), |x, y| x.min(y), 0, n - 1)
        .expect("a total order is a distributive lattice")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The Lukasiewicz chain on `n` elements: max and truncated addition shifted
/// to a product, labelled by the fractions k/(n-1).
pub fn lukasiewicz(n: usize) -> FiniteRig {
    assert!(n >= 1, "a Lukasiewicz chain needs at least one element");
    let labels = (0..n)
        .map(|i| {
            if i == 0 {
                "0".into()
            } else if i == n - 1 {
                "1".into()
            } else {
                let g = gcd(i, n - 1);
                format!("{}/{}", i / g, (n - 1) / g)
            }
        })
        .collect();
    FiniteRig::from_fn(
        format!("L{n}"),
        labels,
        |x, y| x.max(y),
        |x, y| (x + y).saturating_sub(n - 1),
        0,
        n - 1,
    )
    .expect("truncated addition distributes over max")
}

const ATOM_LETTERS: [char; 5] = ['a', 'b', 'c', 'd', 'e'];

/// The Boolean lattice on `k` atoms as bitmasks: add is union, mul is
/// intersection.
pub fn boolean(k: usize) -> FiniteRig {
    assert!((1..=5).contains(&k), "supported Boolean lattices have 1 to 5 atoms");
    let n = 1usize << k;
    let labels = (0..n)
        .map(|mask| {
            if mask == 0 {
                "0".into()
            } else if mask == n - 1 {
                "1".into()
            } else {
                (0..k)
                    .filter(|bit| mask >> bit & 1 == 1)
                    .map(|bit| ATOM_LETTERS[bit])
                    .collect()
            }
        })
        .collect();
    FiniteRig::from_fn(format!("B{k}"), labels, |x, y| x | y, |x, y| x & y, 0, n - 1)
        .expect("subsets form a distributive lattice")
}

/// The naturals truncated at `cap`: a rig that is not integral once
/// `cap >= 2`, kept around as a negative sample.
pub fn saturating_naturals(cap: usize) -> FiniteRig {
    assert!(cap >= 1, "the cap must be at least 1");
    let labels = (0..=cap).map(|i| i.to_string()).collect();
    FiniteRig::from_fn(
        format!("sat{cap}"),
        labels,
        |x, y| (x + y).min(cap),
        |x, y| (x * y).min(cap),
        0,
        1,
    )
    .expect("saturated arithmetic keeps the rig laws")
}

/// The lattice of down-sets of a poset, ordered by inclusion.
pub fn downset_lattice(name: impl Into<String>, poset: &Poset) -> FiniteRig {
    let n = poset.size();
    assert!(n <= 16, "down-set lattices are enumerated by bitmask");
    let closed = |mask: usize| {
        (0..n).all(|i| {
            mask >> i & 1 == 0 || (0..n).all(|j| !poset.leq(j, i) || mask >> j & 1 == 1)
        })
    };
    let masks: Vec<usize> = (0..1usize << n).filter(|&m| closed(m)).collect();
    let index = |mask: usize| -> usize {
        masks.binary_search(&mask).expect("unions and intersections of down-sets are down-sets")
    };
    let full = (1usize << n) - 1;
    let labels = masks
        .iter()
        .map(|&mask| {
            if mask == 0 {
                "0".into()
            } else if mask == full {
                "1".into()
            } else {
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| poset.label(i))
                    .collect::<Vec<_>>()
                    .join("")
            }
        })
        .collect();
    FiniteRig::from_fn(
        name,
        labels,
        |x, y| index(masks[x] | masks[y]),
        |x, y| index(masks[x] & masks[y]),
        0,
        masks.len() - 1,
    )
    .expect("down-sets form a distributive lattice")
}

fn poset_from_pairs(labels: &[&str], strict: &[(usize, usize)]) -> Poset {
    let n = labels.len();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for &(lo, hi) in strict {
        leq[lo * n + hi] = true;
    }
    Poset::new(labels.iter().map(|s| s.to_string()).collect(), leq)
        .expect("the listed pairs form an order")
}

/// Down-sets of the V-shaped poset: one bottom under two incomparable tops.
/// Five elements, two coatoms meeting in the stem.
pub fn v_lattice() -> FiniteRig {
    downset_lattice("V5", &poset_from_pairs(&["m", "a", "b"], &[(0, 1), (0, 2)]))
}

/// Down-sets of the A-shaped poset: two incomparable atoms under one middle.
/// Five elements, the two atoms join below the top.
pub fn lambda_lattice() -> FiniteRig {
    downset_lattice("Lambda5", &poset_from_pairs(&["a", "b", "m"], &[(0, 2), (1, 2)]))
}

/// A seeded search for an integral rig of the given size. The search is
/// complete, so it always lands on a model (a chain qualifies).
pub fn random_integral_rig(size: usize, seed: u64) -> Result<FiniteRig> {
    random_search(size, seed, false)
}

/// The same search constrained to non-idempotent addition. Integrality and
/// distributivity force `x + x = x`, so this exhausts; it exists to give the
/// no-model path a genuine trigger.
pub fn random_non_idempotent_rig(size: usize, seed: u64) -> Result<FiniteRig> {
    random_search(size, seed, true)
}

fn random_search(size: usize, seed: u64, fresh_addition: bool) -> Result<FiniteRig> {
    if !(2..=5).contains(&size) {
        return Err(Error::Shape(format!(
            "random sizes run from 2 to 5, got {size}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((size as u64) << 56));
    let n = size;
    let free: Vec<(usize, usize)> = (2..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .collect();
    let orders: Vec<Vec<Vec<usize>>> = (0..2)
        .map(|_| {
            free.iter()
                .map(|_| {
                    let mut vals: Vec<usize> = (0..n).collect();
                    vals.shuffle(&mut rng);
                    vals
                })
                .collect()
        })
        .collect();

    const HOLE: usize = usize::MAX;
    let mut add = vec![HOLE; n * n];
    let mut mul = vec![HOLE; n * n];
    for x in 0..n {
        add[x] = x;
        add[x * n] = x;
        add[n + x] = 1;
        add[x * n + 1] = 1;
        mul[x] = 0;
        mul[x * n] = 0;
        mul[n + x] = x;
        mul[x * n + 1] = x;
    }

    // A partially filled commutative table is consistent when every fully
    // determined instance of the laws holds.
    let assoc_ok = |t: &[usize]| {
        for x in 0..n {
            for y in 0..n {
                let xy = t[x * n + y];
                if xy == HOLE {
                    continue;
                }
                for z in 0..n {
                    let yz = t[y * n + z];
                    if yz == HOLE {
                        continue;
                    }
                    let l = t[xy * n + z];
                    let r = t[x * n + yz];
                    if l != HOLE && r != HOLE && l != r {
                        return false;
                    }
                }
            }
        }
        true
    };
    let distrib_ok = |add: &[usize], mul: &[usize]| {
        for x in 0..n {
            for y in 0..n {
                let yz_all: Vec<usize> = (0..n).map(|z| add[y * n + z]).collect();
                for (z, &yz) in yz_all.iter().enumerate() {
                    let (xy, xz) = (mul[x * n + y], mul[x * n + z]);
                    if yz == HOLE || xy == HOLE || xz == HOLE {
                        continue;
                    }
                    let l = mul[x * n + yz];
                    let r = add[xy * n + xz];
                    if l != HOLE && r != HOLE && l != r {
                        return false;
                    }
                }
            }
        }
        true
    };

    fn fill_table(
        at: usize,
        free: &[(usize, usize)],
        orders: &[Vec<usize>],
        n: usize,
        table: &mut [usize],
        good: &mut dyn FnMut(&[usize]) -> bool,
        done: &mut dyn FnMut(&mut [usize]) -> bool,
    ) -> bool {
        if at == free.len() {
            return done(table);
        }
        let (i, j) = free[at];
        for &v in &orders[at] {
            table[i * n + j] = v;
            table[j * n + i] = v;
            if good(table) && fill_table(at + 1, free, orders, n, table, good, done) {
                return true;
            }
        }
        table[i * n + j] = usize::MAX;
        table[j * n + i] = usize::MAX;
        false
    }

    let labels: Vec<String> = (0..n)
        .map(|x| match x {
            0 => "0".into(),
            1 => "1".into(),
            _ => format!("x{x}"),
        })
        .collect();
    let name = format!("R{size}s{seed}");
    let mul_base = mul;
    let mut found = None;
    {
        let mut add_done = |add: &mut [usize]| -> bool {
            if fresh_addition && (0..n).all(|x| add[x * n + x] == x) {
                return false;
            }
            let add_now = add.to_vec();
            let mut mul_good = |m: &[usize]| assoc_ok(m) && distrib_ok(&add_now, m);
            let mut mul_done = |m: &mut [usize]| -> bool {
                let rig = FiniteRig::from_fn(
                    name.clone(),
                    labels.clone(),
                    |x, y| add_now[x * n + y],
                    |x, y| m[x * n + y],
                    0,
                    1,
                )
                .expect("the search only completes consistent tables");
                found = Some(rig);
                true
            };
            let mut mul_table = mul_base.clone();
            fill_table(0, &free, &orders[1], n, &mut mul_table, &mut mul_good, &mut mul_done)
        };
        let mut add_good = |t: &[usize]| assoc_ok(t);
        fill_table(0, &free, &orders[0], n, &mut add, &mut add_good, &mut add_done);
    }
    found.ok_or_else(|| {
        Error::NoModelFound(format!(
            "no integral rig of size {size} with the requested constraints under seed {seed}"
        ))
    })
}

/// The named small algebras every suite runs over: the truth values, chains,
/// Lukasiewicz chains, and Boolean lattices.
pub fn base_catalog() -> Vec<FiniteRig> {
    let mut out = vec![two()];
    out.extend((3..=6).map(chain));
    out.extend((2..=6).map(lukasiewicz));
    out.extend((1..=4).map(boolean));
    out
}

/// The base catalog, all pairwise products of its entries, and fifty seeded
/// random integral rigs of sizes 2 to 5.
pub fn full_catalog() -> Vec<FiniteRig> {
    let base = base_catalog();
    let mut out = base.clone();
    for i in 0..base.len() {
        for j in i..base.len() {
            out.push(FiniteRig::product(&base[i], &base[j]).0);
        }
    }
    for seed in 0..50u64 {
        let size = 2 + (seed as usize % 4);
        out.push(
            random_integral_rig(size, seed)
                .expect("the unconstrained search always finds a chain"),
        );
    }
    out
}

/// Every distributive lattice with at most five elements, plus the Boolean
/// lattices up to sixteen.
pub fn lattice_catalog() -> Vec<FiniteRig> {
    vec![
        trivial(),
        two(),
        chain(3),
        chain(4),
        boolean(2),
        chain(5),
        v_lattice(),
        lambda_lattice(),
        boolean(3),
        boolean(4),
    ]
}

/// The Lukasiewicz chains up to six elements and their pairwise products,
/// in MV form.
pub fn mv_catalog() -> Vec<MVAlgebra> {
    let chains: Vec<FiniteRig> = (2..=6).map(lukasiewicz).collect();
    let mut out: Vec<MVAlgebra> = chains
        .iter()
        .map(|r| mv_from_rig(r).expect("Lukasiewicz chains carry MV structure"))
        .collect();
    for i in 0..chains.len() {
        for j in i..chains.len() {
            let (p, _, _) = FiniteRig::product(&chains[i], &chains[j]);
            out.push(mv_from_rig(&p).expect("products of MV rigs are MV rigs"));
        }
    }
    out
}

/// What a generator expression produces.
#[derive(Debug, Clone)]
pub enum Generated {
    Rig(FiniteRig),
    Algebra(MVAlgebra),
}

struct Cursor<'a> {
    words: &'a [String],
    at: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a str> {
        self.words.get(self.at).map(String::as_str)
    }

    fn next(&mut self) -> Result<&'a str> {
        let w = self
            .words
            .get(self.at)
            .ok_or_else(|| Error::Parse("generator expression ended early".into()))?;
        self.at += 1;
        Ok(w)
    }

    fn number(&mut self, what: &str, lo: usize, hi: usize) -> Result<usize> {
        let w = self.next()?;
        let v: usize = w
            .parse()
            .map_err(|_| Error::Parse(format!("expected a number for {what}, got `{w}`")))?;
        if !(lo..=hi).contains(&v) {
            return Err(Error::Parse(format!(
                "{what} must lie between {lo} and {hi}, got {v}"
            )));
        }
        Ok(v)
    }
}

fn rig_spec(cur: &mut Cursor) -> Result<FiniteRig> {
    match cur.next()? {
        "trivial" => Ok(trivial()),
        "two" => Ok(two()),
        "chain" => Ok(chain(cur.number("the chain size", 1, 32)?)),
        "lukasiewicz" => Ok(lukasiewicz(cur.number("the chain size", 1, 32)?)),
        "boolean" => Ok(boolean(cur.number("the atom count", 1, 5)?)),
        "sat" => Ok(saturating_naturals(cur.number("the cap", 1, 31)?)),
        "v5" => Ok(v_lattice()),
        "lambda5" => Ok(lambda_lattice()),
        "random" => {
            let size = cur.number("the size", 2, 5)?;
            let seed = match cur.peek() {
                Some("--seed") => {
                    cur.at += 1;
                    cur.number("the seed", 0, usize::MAX)?
                }
                Some(w) if w.parse::<usize>().is_ok() => cur.number("the seed", 0, usize::MAX)?,
                _ => 0,
            };
            random_integral_rig(size, seed as u64)
        }
        "product" => {
            let a = rig_spec(cur)?;
            let b = rig_spec(cur)?;
            Ok(FiniteRig::product(&a, &b).0)
        }
        other => Err(Error::Parse(format!("unknown generator `{other}`"))),
    }
}

/// Parse a generator expression such as `lukasiewicz 3`,
/// `product chain 2 boolean 2`, or `mv lukasiewicz 4`.
pub fn parse_generator(words: &[String]) -> Result<Generated> {
    let mut cur = Cursor { words, at: 0 };
    let out = if words.first().map(String::as_str) == Some("mv") {
        cur.at = 1;
        Generated::Algebra(mv_from_rig(&rig_spec(&mut cur)?)?)
    } else {
        Generated::Rig(rig_spec(&mut cur)?)
    };
    if cur.at != words.len() {
        return Err(Error::Parse(format!(
            "unexpected trailing words: {}",
            words[cur.at..].join(" ")
        )));
    }
    Ok(out)
}
