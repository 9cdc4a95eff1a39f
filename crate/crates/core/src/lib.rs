//! The multi-separator problem on graphs: choose a node set `S` minimizing
//! `Σ_{v∈S} c_v + Σ_{f∈F(S)} c_f`, where `F(S)` holds the interactions whose
//! endpoints are separated by `S`.
//!
//! The crate provides the model, exhaustive oracles for small instances, an
//! exact solver for absolute dominant costs, reductions to and from related
//! problems, the two greedy local search solvers and the variation of
//! information metrics used to compare separators.

pub mod dominant;
pub mod error;
pub mod generate;
pub mod graph;
pub mod local_search;
pub mod metrics;
pub mod msp;
pub mod oracle;
pub mod reductions;

pub use error::{DominantError, GraphError, MetricError, MspError, OracleError, ReductionError};
pub use graph::{components, Components, Graph, Grid3};
pub use msp::{objective, Interaction, Label, MspInstance, PartialAssignment, Separator};
