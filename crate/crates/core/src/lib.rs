//! Exact algorithms for the *almost induced matching* problem: given a graph
//! `G` and a budget `k`, decide whether deleting at most `k` vertices leaves a
//! graph in which every connected component is a single edge.
//!
//! The crate provides:
//!
//! * a kernelizer that shrinks any instance to at most `6k` vertices or
//!   answers NO ([`kernel::reduce`]),
//! * a branch-and-search decision procedure with witness extraction
//!   ([`solver::solve`]),
//! * a brute-force oracle for small instances ([`oracle`]),
//! * branching-factor computation for the solver's recurrences ([`analysis`]),
//! * seeded instance generators and a bench harness ([`gen`], [`bench`]),
//! * a plain-text graph format ([`textio`]).

pub mod analysis;
pub mod bench;
pub mod crown;
pub mod gen;
pub mod graph;
pub mod kernel;
pub mod oracle;
pub mod packing;
pub mod solver;
pub mod textio;

pub use graph::{Graph, GraphError, VertexId, VertexSet};
pub use kernel::{reduce, Instance, KernelResult};
pub use solver::{solve, SolveConfig, SolveResult};
