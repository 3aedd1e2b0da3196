//! Span of upward-planar layered drawings of DAGs.
//!
//! The crate bundles an exact search oracle, a dual-circulation solver for
//! plane st-graphs and the solvers built on it, constructive drawers for
//! directed trees, lower-bound and reduction generators, and a
//! vertex-cover kernel.

pub mod classes;
pub mod drawing;
pub mod embedding;
pub mod exact;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod trees;

pub use graph::{build_dag, Dag, GraphError};
