//! Finitely generated subgroups of free groups through their Stallings graphs.
//!
//! The crate builds the graph of a subgroup by folding, answers membership and
//! inclusion questions, and analyses finite-index extensions (the
//! commensurator, the full lattice of extensions, counting bounds) and
//! malnormality (decision and malnormal closure).

pub mod cli;
pub mod error;
pub mod exec;
pub mod fi;
pub mod graph;
pub mod malnormal;
pub mod random;
pub mod unionfind;
pub mod words;

pub use error::{Error, Result};
pub use graph::{
    CoreAutomaton, CoreDecomposition, GraphMorphism, LabeledGraph, StallingsGraph, StepKind,
};
pub use words::{Basis, CyclicDecomposition, Letter, ReducedWord, Word};
