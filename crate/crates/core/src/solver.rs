//! The branch-and-reduce search.
//!
//! Every node reduces its instance to a fixpoint, then branches on the sets
//! of the first applicable branching rule. Deleted vertices are threaded
//! through the recursion so that a YES answer comes with a certificate,
//! which is checked against the recognizer before it is returned.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::branching::{select_branch, BranchDecision, BranchError, RuleId};
use crate::digraph::{Digraph, GraphError, VertexId};
use crate::recognizer::is_pumpkin;
use crate::reduction::{reduce_traced, Instance, ReductionOutcome, ReductionRule};

/// Vertices deleted to obtain a pumpkin.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Solution {
    pub deleted: BTreeSet<VertexId>,
}

impl Solution {
    pub fn len(&self) -> usize {
        self.deleted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deleted.is_empty()
    }

    /// Deleted vertices, ascending.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.deleted.iter().copied()
    }

    /// Whether `g - self` is a pumpkin with the given terminals.
    pub fn certifies(&self, g: &Digraph, s: VertexId, t: VertexId) -> bool {
        if self.deleted.contains(&s) || self.deleted.contains(&t) {
            return false;
        }
        match g.delete_vertices(&self.deleted) {
            Ok(h) => is_pumpkin(&h, s, t).is_ok_and(|v| v.is_pumpkin()),
            Err(_) => false,
        }
    }
}

impl FromIterator<VertexId> for Solution {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        Solution {
            deleted: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    pub max_depth: u64,
    pub rule_firings: BTreeMap<RuleId, u64>,
    pub reductions: BTreeMap<ReductionRule, u64>,
}

impl SearchStats {
    /// Folds the counters of another search into this one.
    pub fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.leaves += other.leaves;
        self.max_depth = self.max_depth.max(other.max_depth);
        for (&r, &c) in &other.rule_firings {
            *self.rule_firings.entry(r).or_default() += c;
        }
        for (&r, &c) in &other.reductions {
            *self.reductions.entry(r).or_default() += c;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Branch(#[from] BranchError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("undecided instance with no applicable rule")]
    NoApplicableRule,
    #[error("recursion depth {depth} exceeds limit {limit}")]
    DepthExceeded { depth: u64, limit: u64 },
    #[error("certificate {0:?} does not yield a pumpkin")]
    InvalidCertificate(Vec<VertexId>),
}

/// Called at every branching node with the reduced instance and the decision.
pub type BranchObserver<'a> = dyn FnMut(&Instance, &BranchDecision) + 'a;

struct Search<'o, 'a> {
    stats: SearchStats,
    depth_limit: u64,
    observer: Option<&'o mut BranchObserver<'a>>,
}

impl Search<'_, '_> {
    fn enter(&mut self, depth: u64) -> Result<(), SolveError> {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if depth > self.depth_limit {
            return Err(SolveError::DepthExceeded {
                depth,
                limit: self.depth_limit,
            });
        }
        Ok(())
    }

    fn run(&mut self, inst: Instance, depth: u64) -> Result<Option<Solution>, SolveError> {
        self.enter(depth)?;
        let reductions = &mut self.stats.reductions;
        let outcome = reduce_traced(inst, &mut |r| *reductions.entry(r).or_default() += 1);
        let (reduced, forced) = match outcome {
            ReductionOutcome::Decided { yes, partial } => {
                self.stats.leaves += 1;
                return Ok(yes.then_some(partial));
            }
            ReductionOutcome::Reduced { instance, forced } => (instance, forced),
        };
        let decision = select_branch(&reduced)?.ok_or(SolveError::NoApplicableRule)?;
        *self.stats.rule_firings.entry(decision.rule).or_default() += 1;
        if let Some(observer) = self.observer.as_mut() {
            observer(&reduced, &decision);
        }
        for set in &decision.sets {
            if reduced.k < set.len() as i64 {
                // R1 decides such a child on sight; skip building its graph.
                self.enter(depth + 1)?;
                self.stats.leaves += 1;
                *self.stats.reductions.entry(ReductionRule::R1).or_default() += 1;
                continue;
            }
            let child = reduced.without(set)?;
            if let Some(mut sol) = self.run(child, depth + 1)? {
                sol.deleted.extend(set.iter().copied());
                sol.deleted.extend(forced.deleted.iter().copied());
                return Ok(Some(sol));
            }
        }
        Ok(None)
    }
}

/// Decides the restricted problem. Returns a verified certificate on YES.
pub fn solve_rpvds(inst: &Instance) -> Result<(Option<Solution>, SearchStats), SolveError> {
    solve_rpvds_inner(inst, None)
}

/// [`solve_rpvds`] with a callback invoked at every branching node.
pub fn solve_rpvds_observed(
    inst: &Instance,
    observer: &mut BranchObserver<'_>,
) -> Result<(Option<Solution>, SearchStats), SolveError> {
    solve_rpvds_inner(inst, Some(observer))
}

fn solve_rpvds_inner(
    inst: &Instance,
    observer: Option<&mut BranchObserver<'_>>,
) -> Result<(Option<Solution>, SearchStats), SolveError> {
    let mut root = inst.clone();
    // At most n - 2 vertices can go while keeping both terminals.
    root.k = root.k.min(inst.g.num_vertices() as i64 - 2);
    let mut search = Search {
        stats: SearchStats::default(),
        depth_limit: root.k.max(0) as u64 + 1,
        observer,
    };
    let found = search.run(root, 0)?;
    if let Some(sol) = &found {
        if sol.len() as i64 > inst.k || !sol.certifies(&inst.g, inst.s, inst.t) {
            return Err(SolveError::InvalidCertificate(sol.vertices().collect()));
        }
    }
    Ok((found, search.stats))
}

/// Smallest budget for which the restricted instance is YES, with its
/// certificate, found by binary search over `0..=n-2`. The budget of `inst`
/// is ignored. `None` if even deleting everything but the terminals fails.
pub fn minimum_rpvds(inst: &Instance) -> Result<Option<(usize, Solution)>, SolveError> {
    let max_k = inst.g.num_vertices().saturating_sub(2);
    let attempt = |k: usize| -> Result<Option<Solution>, SolveError> {
        let probe = Instance {
            k: k as i64,
            ..inst.clone()
        };
        Ok(solve_rpvds(&probe)?.0)
    };
    let Some(mut best) = attempt(max_k)? else {
        return Ok(None);
    };
    let (mut lo, mut hi) = (0, max_k);
    while lo < hi {
        let mid = (lo + hi) / 2;
        match attempt(mid)? {
            Some(sol) => {
                hi = mid;
                best = sol;
            }
            None => lo = mid + 1,
        }
    }
    Ok(Some((lo, best)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PvdsSolution {
    pub s: VertexId,
    pub t: VertexId,
    pub solution: Solution,
}

/// Decides the unrestricted problem by trying every ordered terminal pair in
/// ascending order. Statistics cover all pairs tried.
pub fn solve_pvds(g: &Digraph, k: i64) -> Result<(Option<PvdsSolution>, SearchStats), SolveError> {
    let mut total = SearchStats::default();
    let vertices: Vec<VertexId> = g.vertices().collect();
    for &s in &vertices {
        for &t in &vertices {
            if s == t {
                continue;
            }
            let inst = Instance {
                g: g.clone(),
                k,
                s,
                t,
            };
            let (found, stats) = solve_rpvds(&inst)?;
            total.absorb(&stats);
            if let Some(solution) = found {
                return Ok((Some(PvdsSolution { s, t, solution }), total));
            }
        }
    }
    Ok((None, total))
}
