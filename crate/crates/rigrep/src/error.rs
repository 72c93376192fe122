//! Error types shared across the crate.
//!
//! Two families matter to callers: structural problems with input data
//! (`Shape`, `Parse`) and semantic failures of a requested construction
//! (everything else). The CLI maps the first family to exit code 2 and the
//! second to exit code 1.

use thiserror::Error;

/// A cell position inside an operation table, used in axiom witnesses.
pub type Witness = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An equational law failed. `law` names the law, `witness` lists the
    /// element indices instantiating the failure, and `detail` renders the
    /// two sides that disagree.
    #[error("axiom violation: {law} fails at {witness:?}: {detail}")]
    AxiomViolation {
        law: &'static str,
        witness: Witness,
        detail: String,
    },

    /// The operation needs `1 + x = 1` to hold throughout.
    #[error("rig `{name}` is not integral: 1 + {label} != 1")]
    NotIntegral { name: String, label: String },

    /// The element has no complement making a Boolean pair.
    #[error("element `{label}` is not Boolean in `{name}`")]
    NotBoolean { name: String, label: String },

    /// The down-set construction needs `a * x = x` for every `x <= a`.
    #[error("element `{label}` is not strongly idempotent in `{name}`")]
    NotStronglyIdempotent { name: String, label: String },

    /// A map that should factor through a quotient does not.
    #[error("no factorization: {0}")]
    NoSuchFactorization(String),

    /// The operation needs a distributive lattice (`x*x = x` and `1+x = 1`).
    #[error("rig `{name}` is not a distributive lattice: {detail}")]
    NotLattice { name: String, detail: String },

    /// Residuals only exist over an idempotent addition.
    #[error("rig `{name}` does not have idempotent addition: {label} + {label} != {label}")]
    NotIdempotentAddition { name: String, label: String },

    /// The pre-linearity law `(a -o b) + (b -o a) = 1` fails somewhere.
    #[error("rig `{name}` is not pre-linear: witness ({left}, {right})")]
    NotPrelinear {
        name: String,
        left: String,
        right: String,
    },

    /// Conversion to an MV-algebra needs integral + residuated + the
    /// Wajsberg identity.
    #[error("rig `{name}` is not an MV-rig: {detail}")]
    NotMVRig { name: String, detail: String },

    /// The given subset is not a prime ideal.
    #[error("subset {ideal:?} of `{name}` is not a prime ideal: {detail}")]
    NotPrime {
        name: String,
        ideal: Vec<usize>,
        detail: String,
    },

    /// A fiber element whose trivializing set has no largest member; this
    /// cannot happen for sheaves built by `build_representation` and
    /// signals a bug upstream if reached.
    #[error("no largest trivializing element below `{at}` for `{element}`")]
    NoLargestWitness { at: String, element: String },

    /// The construction is undefined on the one-element rig.
    #[error("rig `{name}` is trivial (0 = 1)")]
    TrivialSource { name: String },

    /// A map between rigs fails to preserve the structure.
    #[error("not a rig morphism: {0}")]
    NotMorphism(String),

    /// Malformed in-memory data: ragged tables, out-of-range indices,
    /// duplicate labels, size mismatches.
    #[error("shape error: {0}")]
    Shape(String),

    /// Malformed document text.
    #[error("parse error: {0}")]
    Parse(String),

    /// Exhausted a constraint search without finding a model.
    #[error("no model found: {0}")]
    NoModelFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
