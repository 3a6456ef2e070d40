//! Pumpkin recognition with a prescribed source and sink.
//!
//! A digraph is a pumpkin with source `s` and sink `t` exactly when
//!
//! 1. `s != t`,
//! 2. `s` has no in-arcs and `t` has no out-arcs,
//! 3. every other vertex has in-degree 1 and out-degree 1,
//! 4. every vertex is reachable from `s`,
//! 5. the arc `s -> t`, if present, is the whole graph.
//!
//! Condition 5 is the induced-path requirement: a direct arc is a chord of
//! every longer `s`-`t` path.

use std::fmt;

use crate::digraph::{Digraph, Direction, GraphError, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    SourceEqualsSink,
    BadSourceDegree,
    BadSinkDegree,
    BadInternalDegree(VertexId),
    /// The sink is not reachable from the source.
    NoPath,
    Unreachable(VertexId),
    DirectEdgeWithInternals,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SourceEqualsSink => write!(f, "source equals sink"),
            Violation::BadSourceDegree => write!(f, "source has in-arcs"),
            Violation::BadSinkDegree => write!(f, "sink has out-arcs"),
            Violation::BadInternalDegree(v) => write!(f, "vertex {v} does not have in/out degree 1"),
            Violation::NoPath => write!(f, "sink unreachable from source"),
            Violation::Unreachable(v) => write!(f, "vertex {v} unreachable from source"),
            Violation::DirectEdgeWithInternals => {
                write!(f, "source-sink arc present alongside other vertices")
            }
        }
    }
}

/// Outcome of [`is_pumpkin`]. The graph is a pumpkin iff there is no violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PumpkinVerdict {
    pub violation: Option<Violation>,
}

impl PumpkinVerdict {
    #[inline]
    pub fn is_pumpkin(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the five structural conditions in order and reports the first one
/// that fails (smallest vertex id first within a condition).
pub fn is_pumpkin(g: &Digraph, s: VertexId, t: VertexId) -> Result<PumpkinVerdict, GraphError> {
    g.check_alive(s)?;
    g.check_alive(t)?;
    Ok(PumpkinVerdict {
        violation: first_violation(g, s, t),
    })
}

fn first_violation(g: &Digraph, s: VertexId, t: VertexId) -> Option<Violation> {
    if s == t {
        return Some(Violation::SourceEqualsSink);
    }
    if g.in_degree(s) != 0 {
        return Some(Violation::BadSourceDegree);
    }
    if g.out_degree(t) != 0 {
        return Some(Violation::BadSinkDegree);
    }
    if let Some(v) = g
        .vertices()
        .find(|&v| v != s && v != t && (g.in_degree(v) != 1 || g.out_degree(v) != 1))
    {
        return Some(Violation::BadInternalDegree(v));
    }
    let seen = g.reach_mask(s, Direction::Forward);
    if !seen[t.index()] {
        return Some(Violation::NoPath);
    }
    if let Some(v) = g.vertices().find(|v| !seen[v.index()]) {
        return Some(Violation::Unreachable(v));
    }
    if g.has_edge(s, t) && g.num_vertices() != 2 {
        return Some(Violation::DirectEdgeWithInternals);
    }
    None
}
