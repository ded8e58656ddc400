//! Isoperimetric numbers and normalized cuts on vertex- and edge-weighted
//! graphs, with exact rational arithmetic throughout.
//!
//! The solvers target trees: a linear-time decision procedure for the max
//! isoperimetric problem, a bisection FPTAS on top of it, and polynomial
//! enumeration for fixed `k`. A brute-force oracle covers small general
//! graphs, and [`gadgets`] builds the hardness constructions.

mod arith;

pub mod decide;
pub mod error;
pub mod exact;
pub mod format;
pub mod gadgets;
pub mod graph;
pub mod oracle;
pub mod rational;
pub mod search;

pub use decide::{decide_ipp_max, decide_ipp_max_rooted, Answer, DecideStats, Decision};
pub use error::{Error, Result};
pub use exact::{
    enumeration_bounds, exact_ipp_fixed_k, exact_ipp_fixed_k_with, exact_ncp_max_fixed_k, exact_ncp_max_fixed_k_with,
    ExactOptions, SolveResult, MAX_NCP_K,
};
pub use format::{format_parts, parse_instance, parse_parts, serialize_instance};
pub use gadgets::GeneratedInstance;
pub use graph::{Edge, Partition, Problem, Subpartition, Variant, VertexSet, WeightedGraph};
pub use oracle::{oracle_value, oracle_value_with, OracleOptions};
pub use rational::{parse_rational, Rational};
pub use search::{
    approximate, bisection_iterations, complete_partition, fptas_ipp_max, mean_bound_inequality_holds,
    mean_bound_sides, ApproxResult, BisectionTrace,
};
