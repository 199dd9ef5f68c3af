//! Finite-scale solver for non-deterministic inductive definitions.
//!
//! A rule `(a, b)` on a set `X` pairs a premise `a ⊆ X` with a conclusion
//! `b ⊆ X`; a subset `Y` is closed under it when `a ⊆ Y` implies that `b`
//! meets `Y`. This crate enumerates and generates the closed subsets of finite
//! rule systems and builds the rule systems behind a number of classical
//! constructions: prime ideals, bisimulations, total relations, models of
//! game theories, points and morphisms of formal spaces, and M/W-type trees.
//!
//! Every enumeration has a brute-force counterpart in [`oracles`].

pub mod closure;
pub mod cotrees;
pub mod document;
pub mod encodings;
pub mod gamelogic;
pub mod oracles;
pub mod rules;
pub mod subset;
pub mod topology;

pub use closure::{
    enumerate_closed, full_family, greatest_closed, is_closed, is_generating,
    is_strongly_generating, least_generating_family, lfp, maximal_closed, minimal_closed,
    minimal_closed_supersets, refining_family,
};
pub use rules::{Classification, Rule, RuleSystem, StarMode};
pub use subset::{Subset, SubsetFamily, Universe};

use thiserror::Error;

/// Default bound on universe size for exhaustive operations.
pub const DEFAULT_MAX_UNIVERSE: usize = 24;

/// Size limits for exhaustive search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_universe: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_universe: DEFAULT_MAX_UNIVERSE,
        }
    }
}

impl Limits {
    pub fn with_max_universe(max_universe: usize) -> Self {
        Self { max_universe }
    }

    pub fn check(&self, size: usize) -> Result<()> {
        if size > self.max_universe {
            Err(Error::CapExceeded {
                size,
                cap: self.max_universe,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("universe mismatch: expected {expected} elements, found {found}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("universe of {size} elements exceeds the search cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("fresh element `{0}` clashes with an existing name")]
    NameClash(String),
    #[error("family member {0:?} is not closed")]
    NotClosed(Vec<usize>),
    #[error("rule system is not deterministic; a least closed superset need not exist")]
    NotDeterministic,
    #[error("greatest closed set requires an elementary rule system")]
    NotElementary,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("invalid formal space: {0}")]
    InvalidSpace(String),
    #[error("invalid signature or coalgebra: {0}")]
    InvalidCoalgebra(String),
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("invalid path set: {0}")]
    InvalidPathSet(String),
    #[error("{0}")]
    Parse(#[from] gamelogic::ParseError),
    #[error("undeclared atom `{0}`")]
    UndeclaredAtom(String),
    #[error("free variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("first-order theory error: {0}")]
    Signature(String),
    #[error("invalid document: {0}")]
    Document(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
