//! Spanning trees with bounded total excess, checked against adjacency
//! spectral radius.
//!
//! The crate bundles the pieces needed to test the spectral sufficient
//! condition for a spanning tree `T` with `te(T, k) ≤ b`:
//!
//! * [`graph`], [`graph6`], [`iso`]: small simple graphs, their text encoding
//!   and brute-force isomorphism.
//! * [`spectral`]: adjacency spectra, quotient matrices and equitable partitions.
//! * [`poly`]: exact polynomial algebra for the quotient characteristic polynomials.
//! * [`excess`]: total excess, exact/heuristic/oracle minimisation and the cut condition.
//! * [`extremal`]: the extremal join families.
//! * [`harness`]: exhaustive and sampled verification runs with JSON reports.

pub mod excess;
pub mod extremal;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod iso;
pub mod poly;
pub mod spectral;

pub use graph::{Graph, GraphError, VertexSet};
pub use graph6::{emit_graph6, parse_graph6, Graph6Error};
pub use iso::is_isomorphic;
