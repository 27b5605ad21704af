//! Executable forest-skein categories.
//!
//! Coloured binary forests modulo skein relations, with the tools needed to
//! study the associated fraction groups: a bounded congruence oracle, word
//! reversing on the associated monoid presentation, Ore and spine
//! certificates, fraction arithmetic with explicit group presentations and
//! abelianizations, and the ordered action on the space of tree/leaf classes.

pub mod congruence;
pub mod context;
pub mod corpus;
pub mod error;
pub mod forest;
pub mod fraction;
pub mod group_presentation;
pub mod ordered;
pub mod ore_spine;
pub mod presentation;
pub mod reversing;
pub mod snf;

pub use error::{FskError, Result};
pub use forest::{Colour, Forest, Letter, Occurrence, Palette, Tree, Word};
pub use presentation::{MonoidRelation, Relation, SkeinPresentation};

use serde::{Deserialize, Serialize};

/// Three-valued answer of a bounded procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }
}

/// How much a verdict can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Confidence {
    Proved,
    Evidence,
    Unknown,
    Refuted,
}

/// Result of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    /// The search space was exhausted without a hit.
    Absent,
    /// A budget ran out before the search finished.
    Exhausted,
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(t) => Outcome::Found(f(t)),
            Outcome::Absent => Outcome::Absent,
            Outcome::Exhausted => Outcome::Exhausted,
        }
    }
}
