//! Definition-literal brute force, used as ground truth in tests.
//!
//! Nothing here touches the reduction or branching rules: the solvers
//! enumerate deletion sets and ask the recognizer, and [`pumpkin_by_paths`]
//! checks the path-union definition of a pumpkin directly.

use thiserror::Error;

use crate::digraph::{Digraph, VertexId};
use crate::recognizer::is_pumpkin;
use crate::reduction::Instance;
use crate::solver::Solution;

/// Largest graph [`brute_force_rpvds`] accepts.
pub const RPVDS_LIMIT: usize = 16;
/// Largest graph [`brute_force_pvds`] accepts.
pub const PVDS_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} vertices exceeds the brute-force limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub min_size: Option<usize>,
    pub witness: Option<Solution>,
    /// Source and sink of the witness (set by [`brute_force_pvds`]).
    pub terminals: Option<(VertexId, VertexId)>,
}

impl OracleResult {
    fn no() -> Self {
        OracleResult {
            min_size: None,
            witness: None,
            terminals: None,
        }
    }

    pub fn yes(&self) -> bool {
        self.witness.is_some()
    }
}

/// Smallest deletion set of size at most `k`, by size and then colex order
/// over the sorted non-terminal vertices.
pub fn brute_force_rpvds(inst: &Instance) -> Result<OracleResult, OracleError> {
    let n = inst.g.num_vertices();
    if n > RPVDS_LIMIT {
        return Err(OracleError::TooLarge { n, limit: RPVDS_LIMIT });
    }
    let (s, t) = (inst.s, inst.t);
    let candidates: Vec<VertexId> = inst.g.vertices().filter(|&v| v != s && v != t).collect();
    if inst.k < 0 {
        return Ok(OracleResult::no());
    }
    let max_size = (inst.k as usize).min(candidates.len());
    let m = candidates.len();
    for size in 0..=max_size {
        for mask in Combinations::new(m, size) {
            let set: Vec<VertexId> = (0..m)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| candidates[i])
                .collect();
            let h = inst
                .g
                .delete_vertices(&set)
                .expect("candidates are live vertices");
            if is_pumpkin(&h, s, t).is_ok_and(|v| v.is_pumpkin()) {
                return Ok(OracleResult {
                    min_size: Some(size),
                    witness: Some(set.into_iter().collect()),
                    terminals: Some((s, t)),
                });
            }
        }
    }
    Ok(OracleResult::no())
}

/// Minimum over all ordered terminal pairs; ties go to the first pair in
/// ascending order.
pub fn brute_force_pvds(g: &Digraph, k: i64) -> Result<OracleResult, OracleError> {
    let n = g.num_vertices();
    if n > PVDS_LIMIT {
        return Err(OracleError::TooLarge { n, limit: PVDS_LIMIT });
    }
    let mut best = OracleResult::no();
    for s in g.vertices() {
        for t in g.vertices().filter(|&t| t != s) {
            let inst = Instance {
                g: g.clone(),
                k,
                s,
                t,
            };
            let r = brute_force_rpvds(&inst)?;
            if let Some(size) = r.min_size {
                if best.min_size.is_none_or(|b| size < b) {
                    best = r;
                }
            }
        }
    }
    Ok(best)
}

/// Bitmasks over `0..m` with exactly `r` bits set, in increasing numeric
/// order (colex order of the index sets).
struct Combinations {
    next: Option<u64>,
    limit: u64,
}

impl Combinations {
    fn new(m: usize, r: usize) -> Self {
        assert!(m < 64);
        let first = if r > m { None } else { Some((1u64 << r) - 1) };
        Combinations {
            next: first,
            limit: 1u64 << m,
        }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        if cur >= self.limit && cur != 0 {
            self.next = None;
            return None;
        }
        self.next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur)
    }
}

/// Literal pumpkin test: is `g` the union of induced `s`-`t` paths with
/// pairwise disjoint interiors?
pub fn pumpkin_by_paths(g: &Digraph, s: VertexId, t: VertexId) -> bool {
    if s == t || !g.is_alive(s) || !g.is_alive(t) {
        return false;
    }
    let mut paths = Vec::new();
    let mut on_path = vec![false; g.capacity()];
    let mut prefix = vec![s];
    on_path[s.index()] = true;
    induced_paths(g, t, &mut prefix, &mut on_path, &mut paths);

    let mut used = vec![false; g.capacity()];
    let mut chosen = Vec::new();
    choose_family(g, s, t, &paths, 0, &mut used, &mut chosen)
}

/// Every induced simple path from `prefix[0]` to `t` extending `prefix`.
/// A prefix of an induced path is induced, so non-induced prefixes are cut.
fn induced_paths(
    g: &Digraph,
    t: VertexId,
    prefix: &mut Vec<VertexId>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<VertexId>>,
) {
    let last = *prefix.last().unwrap();
    if last == t {
        out.push(prefix.clone());
        return;
    }
    for &w in g.out_neighbors(last) {
        if on_path[w.index()] {
            continue;
        }
        let chord = prefix.iter().any(|&p| (p != last && g.has_edge(p, w)) || g.has_edge(w, p));
        if chord {
            continue;
        }
        on_path[w.index()] = true;
        prefix.push(w);
        induced_paths(g, t, prefix, on_path, out);
        prefix.pop();
        on_path[w.index()] = false;
    }
}

fn choose_family(
    g: &Digraph,
    s: VertexId,
    t: VertexId,
    paths: &[Vec<VertexId>],
    next: usize,
    used: &mut [bool],
    chosen: &mut Vec<usize>,
) -> bool {
    if next == paths.len() {
        return covers(g, s, t, paths, chosen);
    }
    let interior = &paths[next][1..paths[next].len() - 1];
    if interior.iter().all(|v| !used[v.index()]) {
        for v in interior {
            used[v.index()] = true;
        }
        chosen.push(next);
        let found = choose_family(g, s, t, paths, next + 1, used, chosen);
        chosen.pop();
        for v in interior {
            used[v.index()] = false;
        }
        if found {
            return true;
        }
    }
    choose_family(g, s, t, paths, next + 1, used, chosen)
}

fn covers(g: &Digraph, s: VertexId, t: VertexId, paths: &[Vec<VertexId>], chosen: &[usize]) -> bool {
    if chosen.is_empty() {
        return false;
    }
    let mut vertex_hit = vec![false; g.capacity()];
    vertex_hit[s.index()] = true;
    vertex_hit[t.index()] = true;
    let mut arcs = std::collections::BTreeSet::new();
    for &i in chosen {
        for v in &paths[i] {
            vertex_hit[v.index()] = true;
        }
        for w in paths[i].windows(2) {
            arcs.insert((w[0], w[1]));
        }
    }
    g.vertices().all(|v| vertex_hit[v.index()]) && arcs.len() == g.num_edges()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(u32, u32)]) -> Digraph {
        Digraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn rp(n: usize, edges: &[(u32, u32)], k: i64, s: u32, t: u32) -> OracleResult {
        let inst = Instance::new(graph(n, edges), k, VertexId(s), VertexId(t)).unwrap();
        brute_force_rpvds(&inst).unwrap()
    }

    #[test]
    fn combinations_colex() {
        let masks: Vec<u64> = Combinations::new(4, 2).collect();
        assert_eq!(masks, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(Combinations::new(3, 3).collect::<Vec<_>>(), vec![0b111]);
        assert_eq!(Combinations::new(0, 0).collect::<Vec<_>>(), vec![0]);
        assert!(Combinations::new(2, 3).next().is_none());
        for m in 0..8 {
            let total: usize = (0..=m).map(|r| Combinations::new(m, r).count()).sum();
            assert_eq!(total, 1 << m);
        }
    }

    #[test]
    fn rpvds_pumpkin() {
        let r = rp(3, &[(0, 1), (1, 2)], 0, 0, 2);
        assert_eq!(r.min_size, Some(0));
        assert_eq!(r.witness, Some(Solution::default()));
    }

    #[test]
    fn rpvds_direct_arc() {
        // s=0 t=1 a=2
        let r = rp(3, &[(0, 1), (0, 2), (2, 1)], 1, 0, 1);
        assert_eq!(r.min_size, Some(1));
        assert_eq!(r.witness, Some([VertexId(2)].into_iter().collect()));
    }

    #[test]
    fn rpvds_triangle() {
        // 0 -> 1 -> 2 -> 0 with s=0 t=1: vertex 2 must go
        assert!(!rp(3, &[(0, 1), (1, 2), (2, 0)], 0, 0, 1).yes());
        let r = rp(3, &[(0, 1), (1, 2), (2, 0)], 1, 0, 1);
        assert_eq!(r.min_size, Some(1));
        // s=0 t=2: arc t -> s can never be removed
        assert!(!rp(3, &[(0, 1), (1, 2), (2, 0)], 1, 0, 2).yes());
    }

    #[test]
    fn pvds_examples() {
        let pumpkin = graph(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]);
        assert_eq!(brute_force_pvds(&pumpkin, 0).unwrap().min_size, Some(0));

        let complete: Vec<(u32, u32)> = (0..3)
            .flat_map(|u| (0..3).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        let k3 = graph(3, &complete);
        assert!(!brute_force_pvds(&k3, 0).unwrap().yes());
        // Removing one vertex leaves an antiparallel pair; removing two
        // leaves a single vertex. Neither is a pumpkin.
        assert!(!brute_force_pvds(&k3, 1).unwrap().yes());
        assert!(!brute_force_pvds(&k3, 2).unwrap().yes());
    }

    #[test]
    fn too_large() {
        let inst = Instance::new(graph(17, &[]), 1, VertexId(0), VertexId(1)).unwrap();
        assert_eq!(
            brute_force_rpvds(&inst),
            Err(OracleError::TooLarge { n: 17, limit: 16 })
        );
        assert!(brute_force_pvds(&graph(13, &[]), 1).is_err());
    }

    #[test]
    fn literal_definition_examples() {
        let p = |n, e: &[(u32, u32)], s, t| pumpkin_by_paths(&graph(n, e), VertexId(s), VertexId(t));
        assert!(p(3, &[(0, 1), (1, 2)], 0, 2));
        assert!(p(4, &[(0, 1), (1, 3), (0, 2), (2, 3)], 0, 3));
        assert!(!p(4, &[(0, 1), (1, 2), (2, 3), (1, 3)], 0, 3));
        assert!(!p(3, &[(0, 1), (0, 2), (2, 1)], 0, 1));
        assert!(p(2, &[(0, 1)], 0, 1));
        assert!(!p(2, &[], 0, 1));
        assert!(!p(3, &[(0, 1), (1, 2)], 0, 0));
    }
}
