//! DOT drawings: Hasse diagrams for orders and annotated presheaf graphs.

use crate::presheaf::{Base, PresheafOfRigs};
use crate::rig::FiniteRig;
use crate::spectrum::Poset;

fn quoted(s: &str) -> String {
    format!(
        "\"{}\"",
        s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
    )
}

fn hasse(labels: &[String], covers: &[(usize, usize)]) -> String {
    let mut out = String::from("digraph order {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (x, label) in labels.iter().enumerate() {
        out.push_str(&format!("  n{x} [label={}];\n", quoted(label)));
    }
    for &(lo, hi) in covers {
        out.push_str(&format!("  n{lo} -> n{hi};\n"));
    }
    out.push_str("}\n");
    out
}

/// The Hasse diagram of a poset: cover edges only, drawn bottom-up.
pub fn poset_dot(poset: &Poset) -> String {
    hasse(poset.labels(), &poset.covers())
}

/// The Hasse diagram of a rig's canonical order.
pub fn order_dot(rig: &FiniteRig) -> String {
    hasse(rig.labels(), &rig.canonical_order().covers())
}

/// One node per base element, annotated with the fiber's name and size;
/// one edge per cover of the base, labeled by the restriction map's index
/// vector.
pub fn presheaf_dot(p: &PresheafOfRigs) -> String {
    let covers = match p.base() {
        Base::Lattice(l) => l.canonical_order().covers(),
        Base::Poset(ps) => ps.covers(),
    };
    let mut out = String::from("digraph presheaf {\n  rankdir=BT;\n  node [shape=box];\n");
    for x in 0..p.base().size() {
        let fiber = p.fiber(x);
        let label = format!("{}\n{} ({})", p.base().label(x), fiber.name(), fiber.size());
        out.push_str(&format!("  n{x} [label={}];\n", quoted(&label)));
    }
    for (lo, hi) in covers {
        let map = p.restriction(hi, lo).map();
        let rendered = map
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&format!(
            "  n{hi} -> n{lo} [label={}];\n",
            quoted(&format!("[{rendered}]"))
        ));
    }
    out.push_str("}\n");
    out
}
