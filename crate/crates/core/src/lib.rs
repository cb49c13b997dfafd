//! Longest common subsequence and seed chaining between a query string and a
//! pangenome graph, by reduction to longest paths in product DAGs.
//!
//! Each solver builds a DAG whose paths correspond to feasible solutions and
//! runs one of the longest-path routines in [`dag`]:
//!
//! * [`lcs::solve_lcs_sg`]: plain LCS against the graph.
//! * [`gap::solve_fglcs_sg`]: LCS with bounded gaps on both sides.
//! * [`chain::solve_memc`] / [`chain::solve_msp`]: chaining a seed set by total
//!   length or by count.
//!
//! [`oracle`] holds brute-force reference solvers for small inputs, and
//! [`generate`] produces seeded random instances.

pub mod chain;
pub mod dag;
pub mod error;
pub mod gap;
pub mod generate;
pub mod graph;
pub mod lcs;
pub mod oracle;
pub mod report;

pub use chain::{solve_memc, solve_msp, Chain, MemSet, Objective, Seed};
pub use dag::{longest_path_edge, longest_path_vertex, topo_sort, MatchDag, Weighting};
pub use error::{Error, Result};
pub use gap::{solve_fglcs_sg, GapAlignment, GapLimit, GapParams};
pub use generate::{generate_instance, Instance, Profile};
pub use graph::{PangenomeGraph, ReachMatrix};
pub use lcs::{solve_lcs_sg, Alignment};
pub use oracle::{Oracle, OracleBudget};
