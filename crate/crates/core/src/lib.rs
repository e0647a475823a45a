//! L-system derivations, n-gram admissibility laws, and the local tree
//! models those laws induce.
//!
//! - [`lsystem`]: D0L grammars, parallel rewriting, derivation trees.
//! - [`sac`]: forbidden-n-gram law sets over strings.
//! - [`tree`] and [`nac`]: ordered labeled trees, substitution, and node
//!   admissibility checking against a law-derived model.
//! - [`model`]: bounded model checking of grammars, Lonely Beta detection,
//!   k/n/s point classification.
//! - [`ca`]: the radius-1 majority automaton and axis-wise law checks.
//! - [`cli`]: the `lsnac` command-line front end.

pub mod ca;
pub mod cli;
pub mod error;
pub mod lsystem;
pub mod model;
pub mod nac;
pub mod sac;
pub mod symbol;
pub mod tree;

pub use error::{Error, Result};
pub use lsystem::{Derivation, DerivationTree, Grammar};
pub use nac::{CheckMode, TreeModel};
pub use sac::{fib_laws, NGramLawSet, Verdict};
pub use symbol::{parse_word, render, Symbol, Word};
pub use tree::{NodeId, Tree};
