//! Universal cycles (U-cycles) of function classes.
//!
//! A U-cycle of a combinatorial class is a cyclic symbol sequence whose
//! length-k windows list every class member exactly once. This crate
//! builds the transition digraph of a class (vertices are length-(k-1)
//! overlap words, edges are class members), audits the Euler condition,
//! extracts Eulerian circuits into U-cycles, constructs explicit
//! vertex-to-vertex paths for the onto and 1-inequitable graphs, and
//! counts the cycle decomposition of the equitable graphs.
//!
//! Supported classes: all words, injective words, onto words, and the
//! binary equitable / 1-inequitable / 2-inequitable families.
//!
//! Class enumeration and graph construction run on the rayon thread pool
//! when the default `parallel` feature is enabled; disable it for a fully
//! sequential build.

pub mod census;
pub mod classes;
pub mod connect;
pub mod error;
pub mod graph;
pub mod word;

pub use census::{census, census_table, cross_check, CensusReport, CrossCheck};
pub use classes::{ClassName, ClassSpec};
pub use connect::{connect_inequitable, connect_onto, validate_trace, PathTrace, Phase};
pub use error::{Error, Result};
pub use graph::{
    decide_existence, verify_ucycle, CycleDecomposition, DegreeAudit, ExistenceVerdict,
    TransitionGraph, UCycle, VerdictReason, VerifyReport, Witness,
};
pub use word::Word;
