//! Simple directed graphs over dense vertex ids.
//!
//! Vertices are never renumbered: deleting a vertex clears its slot in the
//! alive mask and strips its incident arcs, so ids stay meaningful across
//! the whole recursion and in certificates. Adjacency lists are kept sorted,
//! which gives every rule a deterministic ascending scan order for free.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Index of a vertex slot in a [`Digraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: u32, n: usize },
    #[error("vertex {0} is not alive")]
    DeadVertex(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Digraph {
    alive: Vec<bool>,
    out_adj: Vec<Vec<VertexId>>,
    in_adj: Vec<Vec<VertexId>>,
    num_alive: usize,
    num_edges: usize,
}

impl Digraph {
    /// Graph on vertices `0..n` with no arcs.
    pub fn with_vertices(n: usize) -> Self {
        Digraph {
            alive: vec![true; n],
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            num_alive: n,
            num_edges: 0,
        }
    }

    /// Builds the graph on vertices `0..n` with exactly the given arcs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut g = Digraph::with_vertices(n);
        for (u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.alive.len() as u32);
        self.alive.push(true);
        self.out_adj.push(Vec::new());
        self.in_adj.push(Vec::new());
        self.num_alive += 1;
        id
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        for w in [u, v] {
            if w.index() >= self.capacity() {
                return Err(GraphError::OutOfRange {
                    vertex: w.0,
                    n: self.capacity(),
                });
            }
            if !self.alive[w.index()] {
                return Err(GraphError::DeadVertex(w));
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let out = &mut self.out_adj[u.index()];
        match out.binary_search(&v) {
            Ok(_) => return Err(GraphError::DuplicateEdge(u, v)),
            Err(pos) => out.insert(pos, v),
        }
        let inn = &mut self.in_adj[v.index()];
        let pos = inn.binary_search(&u).unwrap_err();
        inn.insert(pos, u);
        self.num_edges += 1;
        Ok(())
    }

    /// Number of vertex slots ever created, dead ones included.
    #[inline]
    pub fn capacity(&self) -> usize {
        self.alive.len()
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.num_alive
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    #[inline]
    pub fn is_alive(&self, v: VertexId) -> bool {
        self.alive.get(v.index()).copied().unwrap_or(false)
    }

    pub fn check_alive(&self, v: VertexId) -> Result<(), GraphError> {
        if self.is_alive(v) {
            Ok(())
        } else {
            Err(GraphError::DeadVertex(v))
        }
    }

    /// Live vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| VertexId(i as u32))
    }

    /// All arcs, ordered by tail then head.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices()
            .flat_map(move |u| self.out_adj[u.index()].iter().map(move |&v| (u, v)))
    }

    /// Sorted out-neighbors of `v`. Empty for dead vertices.
    #[inline]
    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[v.index()]
    }

    /// Sorted in-neighbors of `v`. Empty for dead vertices.
    #[inline]
    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[v.index()]
    }

    #[inline]
    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_adj[v.index()].len()
    }

    #[inline]
    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_adj[v.index()].len()
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.out_adj
            .get(u.index())
            .is_some_and(|out| out.binary_search(&v).is_ok())
    }

    /// Removes `v` and its incident arcs in place.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        self.check_alive(v)?;
        let outs = std::mem::take(&mut self.out_adj[v.index()]);
        for w in &outs {
            let list = &mut self.in_adj[w.index()];
            if let Ok(pos) = list.binary_search(&v) {
                list.remove(pos);
            }
        }
        let ins = std::mem::take(&mut self.in_adj[v.index()]);
        for w in &ins {
            let list = &mut self.out_adj[w.index()];
            if let Ok(pos) = list.binary_search(&v) {
                list.remove(pos);
            }
        }
        self.num_edges -= outs.len() + ins.len();
        self.alive[v.index()] = false;
        self.num_alive -= 1;
        Ok(())
    }

    /// Returns `G - S`. The receiver is left untouched.
    pub fn delete_vertices<'a, I>(&self, set: I) -> Result<Digraph, GraphError>
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let mut g = self.clone();
        for &v in set {
            g.remove_vertex(v)?;
        }
        Ok(g)
    }

    /// The graph with every arc flipped.
    pub fn reverse(&self) -> Digraph {
        Digraph {
            alive: self.alive.clone(),
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
            num_alive: self.num_alive,
            num_edges: self.num_edges,
        }
    }

    pub fn reachable_from(&self, v: VertexId) -> Result<BTreeSet<VertexId>, GraphError> {
        self.check_alive(v)?;
        let seen = self.reach_mask(v, Direction::Forward);
        Ok(mask_to_set(&seen))
    }

    /// Hop distances from `v` along arcs. Unreachable vertices are absent.
    pub fn bfs_distances(&self, v: VertexId) -> Result<BTreeMap<VertexId, usize>, GraphError> {
        self.check_alive(v)?;
        let dist = self.distances(v, Direction::Forward);
        Ok(dist
            .iter()
            .enumerate()
            .filter_map(|(i, d)| d.map(|d| (VertexId(i as u32), d)))
            .collect())
    }

    /// Reachability mask from `v`, following arcs forward or backward.
    pub(crate) fn reach_mask(&self, v: VertexId, dir: Direction) -> Vec<bool> {
        let mut seen = vec![false; self.capacity()];
        let mut stack = vec![v];
        seen[v.index()] = true;
        while let Some(u) = stack.pop() {
            for &w in self.step(u, dir) {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// BFS distances indexed by vertex slot.
    pub(crate) fn distances(&self, v: VertexId, dir: Direction) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.capacity()];
        let mut queue = VecDeque::new();
        dist[v.index()] = Some(0);
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            let du = dist[u.index()].unwrap_or(0);
            for &w in self.step(u, dir) {
                if dist[w.index()].is_none() {
                    dist[w.index()] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    #[inline]
    fn step(&self, u: VertexId, dir: Direction) -> &[VertexId] {
        match dir {
            Direction::Forward => self.out_neighbors(u),
            Direction::Backward => self.in_neighbors(u),
        }
    }

    /// Full consistency scan of the adjacency structure. Used by tests.
    pub fn check_invariants(&self) -> bool {
        let mut edges = 0;
        for (i, out) in self.out_adj.iter().enumerate() {
            let v = VertexId(i as u32);
            if !self.alive[i] && (!out.is_empty() || !self.in_adj[i].is_empty()) {
                return false;
            }
            if !out.windows(2).all(|w| w[0] < w[1]) || !self.in_adj[i].windows(2).all(|w| w[0] < w[1]) {
                return false;
            }
            for &w in out {
                if w == v || !self.is_alive(w) || self.in_adj[w.index()].binary_search(&v).is_err() {
                    return false;
                }
            }
            for &w in &self.in_adj[i] {
                if !self.is_alive(w) || self.out_adj[w.index()].binary_search(&v).is_err() {
                    return false;
                }
            }
            edges += out.len();
        }
        edges == self.num_edges && self.alive.iter().filter(|&&a| a).count() == self.num_alive
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    Forward,
    Backward,
}

fn mask_to_set(mask: &[bool]) -> BTreeSet<VertexId> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| VertexId(i as u32))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(xs: &[u32]) -> BTreeSet<VertexId> {
        xs.iter().map(|&x| VertexId(x)).collect()
    }

    fn edge_set(g: &Digraph) -> BTreeSet<(u32, u32)> {
        g.edges().map(|(u, v)| (u.0, v.0)).collect()
    }

    #[test]
    fn from_edges_basic() {
        let g = Digraph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 1);
        assert!(g.has_edge(VertexId(0), VertexId(1)));
        assert!(!g.has_edge(VertexId(1), VertexId(0)));
    }

    #[test]
    fn antiparallel_pair_is_legal() {
        let g = Digraph::from_edges(3, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.num_edges(), 2);
        assert!(g.check_invariants());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Digraph::from_edges(2, [(0, 0)]),
            Err(GraphError::SelfLoop(VertexId(0)))
        );
        assert_eq!(
            Digraph::from_edges(2, [(0, 1), (0, 1)]),
            Err(GraphError::DuplicateEdge(VertexId(0), VertexId(1)))
        );
        assert_eq!(
            Digraph::from_edges(2, [(0, 2)]),
            Err(GraphError::OutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn delete_vertices_examples() {
        let path = Digraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let h = path.delete_vertices(&[VertexId(1)]).unwrap();
        assert_eq!(h.vertices().collect::<BTreeSet<_>>(), ids(&[0, 2]));
        assert_eq!(h.num_edges(), 0);
        assert_eq!(path.num_edges(), 2, "original untouched");

        assert_eq!(path.delete_vertices(&[]).unwrap(), path);

        let cycle = Digraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let h = cycle.delete_vertices(&[VertexId(0), VertexId(2)]).unwrap();
        assert_eq!(h.vertices().collect::<BTreeSet<_>>(), ids(&[1, 3]));
        assert_eq!(h.num_edges(), 0);
        assert!(h.check_invariants());
    }

    #[test]
    fn delete_dead_vertex_fails() {
        let g = Digraph::from_edges(3, [(0, 1)]).unwrap();
        let h = g.delete_vertices(&[VertexId(2)]).unwrap();
        assert_eq!(
            h.delete_vertices(&[VertexId(2)]),
            Err(GraphError::DeadVertex(VertexId(2)))
        );
    }

    #[test]
    fn reverse_examples() {
        let g = Digraph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(edge_set(&g.reverse()), [(1, 0)].into_iter().collect());
        let anti = Digraph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(edge_set(&anti.reverse()), edge_set(&anti));
    }

    #[test]
    fn reachability_examples() {
        let path = Digraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.reachable_from(VertexId(0)).unwrap(), ids(&[0, 1, 2]));
        assert_eq!(path.reachable_from(VertexId(2)).unwrap(), ids(&[2]));
        let two = Digraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.reachable_from(VertexId(0)).unwrap(), ids(&[0, 1]));
        let h = two.delete_vertices(&[VertexId(3)]).unwrap();
        assert_eq!(
            h.reachable_from(VertexId(3)),
            Err(GraphError::DeadVertex(VertexId(3)))
        );
    }

    #[test]
    fn bfs_examples() {
        let path = Digraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let d = path.bfs_distances(VertexId(0)).unwrap();
        assert_eq!(d.into_iter().map(|(v, d)| (v.0, d)).collect::<Vec<_>>(), vec![(0, 0), (1, 1), (2, 2)]);

        let diamond = Digraph::from_edges(4, [(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        let d = diamond.bfs_distances(VertexId(0)).unwrap();
        assert_eq!(
            d.into_iter().map(|(v, d)| (v.0, d)).collect::<Vec<_>>(),
            vec![(0, 0), (1, 1), (2, 1), (3, 2)]
        );

        let back = Digraph::from_edges(2, [(1, 0)]).unwrap();
        let d = back.bfs_distances(VertexId(0)).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[&VertexId(0)], 0);
    }
}
