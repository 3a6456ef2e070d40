//! Branching rules (1)-(8) and their primed mirrors.
//!
//! A primed rule is the unprimed rule run on the reversed graph with source
//! and sink swapped. Instead of materialising the reversed graph, every rule
//! is written against [`View`], which swaps the in/out accessors. The branch
//! sets are vertex sets, so they map back to the original graph unchanged.
//!
//! Rules only fire on instances where no reduction rule applies; several of
//! them rely on that (and on earlier branching rules being inapplicable) to
//! find their witnesses. A missing witness is reported as
//! [`BranchError::InternalRuleOrderViolation`].

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::digraph::{Digraph, Direction, VertexId};
use crate::reduction::Instance;

/// Branching rule identifier. Rule (1) has no primed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleId {
    index: u8,
    primed: bool,
}

impl RuleId {
    pub fn new(index: u8, primed: bool) -> Option<RuleId> {
        match (index, primed) {
            (1, true) => None,
            (1..=8, _) => Some(RuleId { index, primed }),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        self.index
    }

    pub fn primed(self) -> bool {
        self.primed
    }

    /// All rules in the order they are tried: (1), (2), (2'), ..., (8), (8').
    pub fn all() -> impl Iterator<Item = RuleId> {
        (1..=8u8).flat_map(|i| {
            [false, true]
                .into_iter()
                .filter_map(move |p| RuleId::new(i, p))
        })
    }

    /// Minimum deletions per branch, in branch order.
    pub fn guaranteed_vector(self) -> &'static [usize] {
        match self.index {
            1 | 2 | 4 | 5 => &[1, 1],
            3 => &[1, 3, 3, 3, 3],
            6 => &[1, 3, 3, 2],
            7 | 8 => &[1, 2, 2],
            _ => unreachable!("RuleId index is 1..=8"),
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.index, if self.primed { "'" } else { "" })
    }
}

impl Serialize for RuleId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchDecision {
    pub rule: RuleId,
    /// The vertex `v` the rule fired on (`u` for rule (1)).
    pub pivot: VertexId,
    /// Sorted, deduplicated branch sets in branching order.
    pub sets: Vec<Vec<VertexId>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchError {
    #[error("rule ({rule}) fired out of order: {reason}")]
    InternalRuleOrderViolation { rule: RuleId, reason: String },
}

/// Orientation-aware read-only view of an instance.
#[derive(Clone, Copy)]
struct View<'a> {
    g: &'a Digraph,
    reversed: bool,
    s: VertexId,
    t: VertexId,
}

impl<'a> View<'a> {
    fn new(inst: &'a Instance, reversed: bool) -> Self {
        let (s, t) = if reversed { (inst.t, inst.s) } else { (inst.s, inst.t) };
        View { g: &inst.g, reversed, s, t }
    }

    fn out(&self, v: VertexId) -> &'a [VertexId] {
        if self.reversed {
            self.g.in_neighbors(v)
        } else {
            self.g.out_neighbors(v)
        }
    }

    fn inn(&self, v: VertexId) -> &'a [VertexId] {
        if self.reversed {
            self.g.out_neighbors(v)
        } else {
            self.g.in_neighbors(v)
        }
    }

    fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        if self.reversed {
            self.g.has_edge(v, u)
        } else {
            self.g.has_edge(u, v)
        }
    }

    /// Live vertices other than the terminals, ascending.
    fn inner(&self) -> impl Iterator<Item = VertexId> + 'a {
        let (s, t) = (self.s, self.t);
        self.g.vertices().filter(move |&v| v != s && v != t)
    }

    fn distances_from_source(&self) -> Vec<Option<usize>> {
        let dir = if self.reversed {
            Direction::Backward
        } else {
            Direction::Forward
        };
        self.g.distances(self.s, dir)
    }
}

type Found = Option<(VertexId, Vec<Vec<VertexId>>)>;
type RuleFn = fn(&View) -> Result<Found, String>;

fn without(set: &[VertexId], drop: VertexId) -> Vec<VertexId> {
    set.iter().copied().filter(|&w| w != drop).collect()
}

fn rule_antiparallel(view: &View) -> Result<Found, String> {
    for u in view.g.vertices() {
        if let Some(&v) = view.out(u).iter().find(|&&v| v > u && view.has_edge(v, u)) {
            return Ok(Some((u, vec![vec![u], vec![v]])));
        }
    }
    Ok(None)
}

fn rule_sink_neighbor(view: &View) -> Result<Found, String> {
    for v in view.inner() {
        let out = view.out(v);
        if out.len() >= 2 && out.binary_search(&view.t).is_ok() {
            return Ok(Some((v, vec![vec![v], without(out, view.t)])));
        }
    }
    Ok(None)
}

fn rule_out_degree_four(view: &View) -> Result<Found, String> {
    for v in view.inner() {
        let out = view.out(v);
        if out.len() >= 4 {
            let four = &out[..4];
            let mut sets = vec![vec![v]];
            sets.extend(four.iter().map(|&wi| without(four, wi)));
            return Ok(Some((v, sets)));
        }
    }
    Ok(None)
}

fn rule_lone_in_neighbor(view: &View) -> Result<Found, String> {
    for v in view.inner() {
        let out = view.out(v);
        if out.len() < 2 {
            continue;
        }
        if let Some(&w) = out.iter().find(|&&w| view.inn(w).len() == 1) {
            return Ok(Some((v, vec![vec![w], without(out, w)])));
        }
    }
    Ok(None)
}

fn rule_forced_arc(view: &View) -> Result<Found, String> {
    for v in view.inner() {
        let out = view.out(v);
        for &w1 in out {
            if let [w2] = view.out(w1) {
                if out.binary_search(w2).is_ok() {
                    return Ok(Some((v, vec![vec![v], vec![w1]])));
                }
            }
        }
    }
    Ok(None)
}

fn rule_degree_three_outside(view: &View) -> Result<Found, String> {
    for v in view.inner() {
        let out = view.out(v);
        if out.len() != 3 {
            continue;
        }
        let escapes = |w: VertexId| {
            view.inn(w)
                .iter()
                .any(|&u| u != v && out.binary_search(&u).is_err())
        };
        let qualifying: Vec<VertexId> = out.iter().copied().filter(|&w| escapes(w)).collect();
        if qualifying.len() < 2 {
            continue;
        }
        let (w1, w2) = (qualifying[0], qualifying[1]);
        let w3 = *out.iter().find(|&&w| w != w1 && w != w2).unwrap();
        let mut first = vec![w2, w3];
        first.extend(without(view.inn(w1), v));
        let mut second = vec![w1, w3];
        second.extend(without(view.inn(w2), v));
        return Ok(Some((v, vec![vec![v], first, second, vec![w1, w2]])));
    }
    Ok(None)
}

fn rule_degree_three(view: &View) -> Result<Found, String> {
    let Some(v) = view.inner().find(|&v| view.out(v).len() == 3) else {
        return Ok(None);
    };
    let out = view.out(v);
    const LABELINGS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for [i, j, l] in LABELINGS {
        let (w1, w2, w3) = (out[i], out[j], out[l]);
        let mut expected = [v, w1];
        expected.sort();
        if view.inn(w2) == expected {
            let mut last = vec![v];
            last.extend(without(view.out(w1), w2));
            return Ok(Some((v, vec![vec![w2], vec![w1, w3], last])));
        }
    }
    Err(format!("no labeling of N+({v}) has N-(w2) = {{{v}, w1}}"))
}

fn rule_degree_two(view: &View) -> Result<Found, String> {
    let dist = view.distances_from_source();
    let Some(v) = view
        .inner()
        .filter(|&v| view.out(v).len() == 2)
        .min_by_key(|&v| (dist[v.index()].unwrap_or(usize::MAX), v))
    else {
        return Ok(None);
    };
    let (a, b) = (view.out(v)[0], view.out(v)[1]);
    let (w1, w2) = if !view.has_edge(a, b) {
        (a, b)
    } else if !view.has_edge(b, a) {
        (b, a)
    } else {
        return Err(format!("out-neighbors {a} and {b} of {v} form an antiparallel pair"));
    };
    let x = match view.inn(w2) {
        [p, q] if *p == v => *q,
        [p, q] if *q == v => *p,
        other => return Err(format!("in-degree of {w2} is {}, expected 2", other.len())),
    };
    if x == view.s || x == view.t || x == w1 {
        return Err(format!("second in-neighbor {x} of {w2} is a terminal or {w1}"));
    }
    let y = match view.out(x) {
        [p, q] if *p == w2 => *q,
        [p, q] if *q == w2 => *p,
        other => return Err(format!("out-degree of {x} is {}, expected 2", other.len())),
    };
    if y == v {
        return Err(format!("derived y equals pivot {v}"));
    }
    Ok(Some((v, vec![vec![w2], vec![w1, x], vec![v, y]])))
}

fn rule_fn(index: u8) -> RuleFn {
    match index {
        1 => rule_antiparallel,
        2 => rule_sink_neighbor,
        3 => rule_out_degree_four,
        4 => rule_lone_in_neighbor,
        5 => rule_forced_arc,
        6 => rule_degree_three_outside,
        7 => rule_degree_three,
        8 => rule_degree_two,
        _ => unreachable!("RuleId index is 1..=8"),
    }
}

fn try_rule(inst: &Instance, rule: RuleId) -> Result<Option<BranchDecision>, BranchError> {
    let view = View::new(inst, rule.primed);
    let violation = |reason: String| BranchError::InternalRuleOrderViolation { rule, reason };
    let Some((pivot, raw)) = rule_fn(rule.index)(&view).map_err(violation)? else {
        return Ok(None);
    };
    let sets: Vec<Vec<VertexId>> = raw
        .into_iter()
        .map(|mut set| {
            set.sort_unstable();
            set.dedup();
            set
        })
        .collect();
    let expected = rule.guaranteed_vector();
    if sets.len() != expected.len() {
        return Err(violation(format!("{} branches, expected {}", sets.len(), expected.len())));
    }
    for (set, &min) in sets.iter().zip(expected) {
        if set.len() < min {
            return Err(violation(format!("branch {set:?} smaller than {min}")));
        }
        if let Some(&bad) = set
            .iter()
            .find(|&&w| w == inst.s || w == inst.t || !inst.g.is_alive(w))
        {
            return Err(violation(format!("branch contains terminal or dead vertex {bad}")));
        }
    }
    Ok(Some(BranchDecision { rule, pivot, sets }))
}

/// The decision of the first applicable branching rule, if any.
///
/// Expects an instance on which no reduction rule applies.
pub fn select_branch(inst: &Instance) -> Result<Option<BranchDecision>, BranchError> {
    for rule in RuleId::all() {
        if let Some(decision) = try_rule(inst, rule)? {
            return Ok(Some(decision));
        }
    }
    Ok(None)
}

/// Every rule whose guard holds, in canonical order. Rules whose guard holds
/// but whose witness derivation fails out of order are included too.
pub fn applicable_rules(inst: &Instance) -> Vec<RuleId> {
    RuleId::all()
        .filter(|&rule| !matches!(try_rule(inst, rule), Ok(None)))
        .collect()
}
