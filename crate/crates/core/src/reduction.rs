//! Reduction rules R1-R9 for the restricted problem (fixed source and sink).
//!
//! Rules are tried in order and the first applicable one fires. R4-R7 delete
//! a single forced vertex and charge it to the budget; the others decide the
//! instance outright. R9 is not part of the original rule set: it settles
//! graphs containing the arc `s -> t` plus other vertices, which no other
//! rule touches.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::digraph::{Digraph, Direction, GraphError, VertexId};
use crate::recognizer::is_pumpkin;
use crate::solver::Solution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("source and sink must differ (both {0})")]
    SourceEqualsSink(VertexId),
}

/// One restricted subproblem: delete at most `k` vertices of `g` so that the
/// rest is a pumpkin with source `s` and sink `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub g: Digraph,
    pub k: i64,
    pub s: VertexId,
    pub t: VertexId,
}

impl Instance {
    pub fn new(g: Digraph, k: i64, s: VertexId, t: VertexId) -> Result<Self, InstanceError> {
        g.check_alive(s)?;
        g.check_alive(t)?;
        if s == t {
            return Err(InstanceError::SourceEqualsSink(s));
        }
        Ok(Instance { g, k, s, t })
    }

    /// The child `(G - set, k - |set|, s, t)`.
    pub fn without(&self, set: &[VertexId]) -> Result<Instance, GraphError> {
        Ok(Instance {
            g: self.g.delete_vertices(set)?,
            k: self.k - set.len() as i64,
            s: self.s,
            t: self.t,
        })
    }

    pub fn is_pumpkin(&self) -> bool {
        is_pumpkin(&self.g, self.s, self.t)
            .map(|v| v.is_pumpkin())
            .unwrap_or(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ReductionRule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
}

impl fmt::Display for ReductionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleAction {
    /// The instance is a NO instance.
    No(ReductionRule),
    /// The instance is a YES instance once the listed vertices are deleted.
    Yes(ReductionRule, Vec<VertexId>),
    /// `v` belongs to every solution: delete it and decrease `k` by one.
    Delete(ReductionRule, VertexId),
}

impl RuleAction {
    pub fn rule(&self) -> ReductionRule {
        match self {
            RuleAction::No(r) | RuleAction::Yes(r, _) | RuleAction::Delete(r, _) => *r,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionOutcome {
    Decided { yes: bool, partial: Solution },
    Reduced { instance: Instance, forced: Solution },
}

/// First applicable reduction rule, or `None` at a fixpoint.
pub fn reduction_step(inst: &Instance) -> Option<RuleAction> {
    let Instance { g, k, s, t } = inst;
    let (s, t, k) = (*s, *t, *k);

    if k < 0 {
        return Some(RuleAction::No(ReductionRule::R1));
    }
    let pumpkin = inst.is_pumpkin();
    if k == 0 && !pumpkin {
        return Some(RuleAction::No(ReductionRule::R2));
    }
    if pumpkin {
        return Some(RuleAction::Yes(ReductionRule::R3, Vec::new()));
    }

    // s and t are exempt from R4/R5; an unreachable t is left to R8.
    let from_s = g.reach_mask(s, Direction::Forward);
    if let Some(v) = g
        .vertices()
        .find(|&v| v != s && v != t && !from_s[v.index()])
    {
        return Some(RuleAction::Delete(ReductionRule::R4, v));
    }
    let to_t = g.reach_mask(t, Direction::Backward);
    if let Some(v) = g.vertices().find(|&v| v != s && v != t && !to_t[v.index()]) {
        return Some(RuleAction::Delete(ReductionRule::R5, v));
    }

    // The arc t -> s survives every deletion.
    if g.has_edge(t, s) {
        return Some(RuleAction::No(ReductionRule::R6));
    }
    if let Some(&v) = g.in_neighbors(s).first() {
        return Some(RuleAction::Delete(ReductionRule::R6, v));
    }
    if let Some(&v) = g.out_neighbors(t).first() {
        return Some(RuleAction::Delete(ReductionRule::R7, v));
    }

    if !from_s[t.index()] {
        return Some(RuleAction::No(ReductionRule::R8));
    }

    if g.has_edge(s, t) && g.num_vertices() > 2 {
        return Some(direct_arc_outcome(inst));
    }
    None
}

/// R9. A pumpkin that keeps the arc `s -> t` consists of that arc alone, so
/// the only candidate solution is every vertex other than `s` and `t`.
fn direct_arc_outcome(inst: &Instance) -> RuleAction {
    let rest: Vec<VertexId> = inst
        .g
        .vertices()
        .filter(|&v| v != inst.s && v != inst.t)
        .collect();
    if rest.len() as i64 <= inst.k {
        RuleAction::Yes(ReductionRule::R9, rest)
    } else {
        RuleAction::No(ReductionRule::R9)
    }
}

/// Applies [`reduction_step`] until the instance is decided or no rule applies.
pub fn reduce_exhaustively(inst: Instance) -> ReductionOutcome {
    reduce_traced(inst, &mut |_| {})
}

/// Like [`reduce_exhaustively`], reporting every fired rule to `on_fire`.
pub fn reduce_traced(mut inst: Instance, on_fire: &mut dyn FnMut(ReductionRule)) -> ReductionOutcome {
    let mut forced = Solution::default();
    loop {
        let Some(action) = reduction_step(&inst) else {
            return ReductionOutcome::Reduced {
                instance: inst,
                forced,
            };
        };
        on_fire(action.rule());
        match action {
            RuleAction::No(_) => {
                return ReductionOutcome::Decided {
                    yes: false,
                    partial: forced,
                }
            }
            RuleAction::Yes(_, extra) => {
                forced.deleted.extend(extra);
                return ReductionOutcome::Decided {
                    yes: true,
                    partial: forced,
                };
            }
            RuleAction::Delete(_, v) => {
                inst.g
                    .remove_vertex(v)
                    .expect("reduction rules only select live vertices");
                inst.k -= 1;
                forced.deleted.insert(v);
            }
        }
    }
}
