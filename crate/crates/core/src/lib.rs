//! Iterated belief revision over explicit doxastic states.
//!
//! A doxastic state is a connected preorder over the propositional models of a
//! finite alphabet, kept as an ordered partition from most to least believed.
//! The crate provides eight revision operators, redundancy checks (brute force,
//! Q-combination based, and polynomial ones for pairs of Horn revisions), and
//! generators for the hardness-reduction instances that tie revision outcomes
//! to satisfiability.

pub mod error;
pub mod formula;
pub mod horn;
pub mod lexredundancy;
pub mod reductions;
pub mod revision;
pub mod scenario;
pub mod state;

pub use error::{Error, Result};
pub use formula::{Alphabet, Formula, Model, ModelSet, Var};
pub use revision::{apply_sequence, Operator, RevisionSequence, RevisionStep};
pub use state::{Comparison, DoxasticState};
