//! Exact solver for Pumpkin Vertex Deletion Set.
//!
//! A digraph is a *pumpkin* if it is a union of induced paths from a common
//! source `s` to a common sink `t` whose interiors are pairwise disjoint. The
//! solver decides whether at most `k` vertex deletions turn a digraph into a
//! pumpkin, in `O*(2^k)` time, and returns the deleted set as a certificate.
//!
//! The restricted variant (prescribed `s` and `t`) is solved by
//! [`solver::solve_rpvds`]; [`solver::solve_pvds`] tries every terminal pair.

pub mod branching;
pub mod digraph;
pub mod edgelist;
pub mod generator;
pub mod oracle;
pub mod recognizer;
pub mod reduction;
pub mod solver;

pub use branching::{applicable_rules, select_branch, BranchDecision, BranchError, RuleId};
pub use digraph::{Digraph, GraphError, VertexId};
pub use recognizer::{is_pumpkin, PumpkinVerdict, Violation};
pub use reduction::{reduce_exhaustively, reduction_step, Instance, ReductionOutcome, ReductionRule, RuleAction};
pub use solver::{solve_pvds, solve_rpvds, SearchStats, Solution, SolveError};
