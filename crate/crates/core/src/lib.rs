//! Exact tools for I,F-partitions of sparse graphs: a vertex split into a
//! set with pairwise distances above 2 and a set inducing a forest.
//!
//! The crate covers assigned graphs and their file formats, the potential
//! function and maximum average degree (exact, via min cuts), a complete
//! partition solver with constructive reductions, star colorings, forcing
//! gadgets, and a discharging audit.
//!
//! ```
//! use ifpart::graph::{named, AssignedGraph};
//! use ifpart::solver::solve_if_partition;
//!
//! let k33 = AssignedGraph::unassigned(named::complete_bipartite(3, 3));
//! assert!(solve_if_partition(&k33).is_unsat());
//! ```

pub mod coloring;
pub mod configs;
pub mod discharge;
pub mod dsu;
pub mod flow;
pub mod format;
pub mod gadget;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod potential;
pub mod reduce;
pub mod solver;
pub mod threads;
pub mod verify;

pub use graph::{AssignedGraph, Graph, Partition, Side, StarColoring, VertexLabel};
pub use potential::Rational;
