//! Finite integral rigs on explicit operation tables.
//!
//! A rig carries two commutative monoid structures, with multiplication
//! distributing over addition and annihilating zero; integrality says
//! `1 + x = 1`, which makes the canonical order `x <= y iff w + x = y for
//! some w` a bounded partial order. Everything here stays at desk scale:
//! carriers are index ranges, operations are flat tables, and every claimed
//! property is checked exhaustively rather than assumed.
//!
//! The pipeline the crate exists for: localize a rig at any element or
//! submonoid ([`localization`]), squash powers into the reticulation lattice
//! ([`reticulation`]), read the spectrum off that lattice ([`spectrum`]),
//! glue the localizations into a sheaf whose global sections rebuild the rig
//! ([`presheaf`], [`represent`]), and cross over to MV-algebras when the
//! residuation is symmetric enough ([`residuated`], [`mv`]).

pub mod congruence;
pub mod doc;
pub mod dot;
pub mod error;
pub mod generate;
pub mod hom;
pub mod localization;
pub mod mv;
pub mod presheaf;
pub mod represent;
pub mod residuated;
pub mod reticulation;
pub mod rig;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use rig::{FiniteRig, OrderRelation, RigMorphism};
