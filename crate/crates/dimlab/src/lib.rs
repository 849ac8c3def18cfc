//! Exact computation of teaching/learning dimensions and Boolean-function
//! evaluation complexities for explicitly represented concept classes.
//!
//! A concept class over `{0,1}^n` is a finite set of truth tables. Viewing
//! the class itself as a Boolean function over one variable per instance (the
//! meta-function) connects learning-side measures (teaching dimension,
//! extended teaching dimension, membership-query complexity) with
//! evaluation-side measures (certificate complexity, block sensitivity,
//! decision-tree depth). This crate computes all of them exactly on small
//! instances and cross-checks the relations between them.
//!
//! Start with the `examples/` directory for runnable tours of each
//! capability, or the `dimlab` binary for the command-line harness.

pub mod bits;
pub mod boolfn;
pub mod cli;
pub mod core;
pub mod error;
pub mod harness;
mod lattice;
pub mod report;
pub mod solvers;
pub mod symmetry;
pub mod teach;
pub mod zoo;

pub use crate::core::{
    difference_set, consistent_concepts, meta_function, Concept, ConceptClass,
    ExplicitBooleanFunction, Instance, InstanceSet, LabeledSample,
};
pub use crate::error::{Error, Result};
