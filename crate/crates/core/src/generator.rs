//! Seeded instance generators.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)` and is drawn
//! through two primitives only, so corpora are reproducible across
//! implementations:
//!
//! * a coin with probability `p` is `(next_u64() >> 11) * 2^-53 < p`;
//! * a uniform index below `len` is `next_u64() % len`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::digraph::{Digraph, VertexId};
use crate::reduction::Instance;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("a direct source-sink path cannot be combined with other paths")]
    MixedDirectEdge,
    #[error("a pumpkin needs at least one path")]
    EmptyPaths,
    #[error("path lengths must be at least 1")]
    ZeroLength,
    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantSpec {
    /// Arc count of each source-sink path.
    pub path_lengths: Vec<usize>,
    /// Number of noise vertices `r`; also the planted budget.
    pub noise_vertices: usize,
    /// Out- and in-attachment attempts per noise vertex.
    pub noise_edges_per_vertex: usize,
    pub seed: u64,
}

struct Stream(ChaCha8Rng);

impl Stream {
    fn new(seed: u64) -> Self {
        Stream(ChaCha8Rng::seed_from_u64(seed))
    }

    fn coin(&mut self, p: f64) -> bool {
        ((self.0.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < p
    }

    fn index(&mut self, len: usize) -> usize {
        (self.0.next_u64() % len as u64) as usize
    }
}

/// Pumpkin with source 0 and sink 1; interior vertices are numbered path by
/// path from 2 upward.
pub fn make_pumpkin(path_lengths: &[usize]) -> Result<(Digraph, VertexId, VertexId), GenError> {
    if path_lengths.is_empty() {
        return Err(GenError::EmptyPaths);
    }
    if path_lengths.contains(&0) {
        return Err(GenError::ZeroLength);
    }
    if path_lengths.contains(&1) && path_lengths.len() > 1 {
        return Err(GenError::MixedDirectEdge);
    }
    let (s, t) = (VertexId(0), VertexId(1));
    let mut g = Digraph::with_vertices(2);
    for &len in path_lengths {
        let mut prev = s;
        for _ in 1..len {
            let v = g.add_vertex();
            g.add_edge(prev, v).expect("fresh vertex");
            prev = v;
        }
        g.add_edge(prev, t).expect("fresh arc");
    }
    Ok((g, s, t))
}

/// Adds `spec.noise_vertices` fresh vertices, each with up to
/// `noise_edges_per_vertex` random out-arcs and in-arcs to earlier vertices.
/// No arc enters `s` or leaves `t`, so deleting the noise restores the
/// pumpkin and the returned budget `k = r` is always sufficient.
pub fn plant_noise(mut g: Digraph, s: VertexId, t: VertexId, spec: &PlantSpec) -> Instance {
    let mut rng = Stream::new(spec.seed);
    let mut heads: Vec<VertexId> = g.vertices().filter(|&v| v != s).collect();
    let mut tails: Vec<VertexId> = g.vertices().filter(|&v| v != t).collect();
    for _ in 0..spec.noise_vertices {
        let v = g.add_vertex();
        for _ in 0..spec.noise_edges_per_vertex {
            if !heads.is_empty() {
                let w = heads[rng.index(heads.len())];
                if !g.has_edge(v, w) {
                    g.add_edge(v, w).expect("distinct live vertices");
                }
            }
            if !tails.is_empty() {
                let u = tails[rng.index(tails.len())];
                if !g.has_edge(u, v) {
                    g.add_edge(u, v).expect("distinct live vertices");
                }
            }
        }
        heads.push(v);
        tails.push(v);
    }
    Instance {
        g,
        k: spec.noise_vertices as i64,
        s,
        t,
    }
}

/// [`make_pumpkin`] followed by [`plant_noise`].
pub fn planted(spec: &PlantSpec) -> Result<Instance, GenError> {
    let (g, s, t) = make_pumpkin(&spec.path_lengths)?;
    Ok(plant_noise(g, s, t, spec))
}

/// Each ordered pair `(u, v)`, `u != v`, visited row-major, gets an arc with
/// probability `p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::InvalidProbability(p));
    }
    let mut rng = Stream::new(seed);
    let mut g = Digraph::with_vertices(n);
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u != v && rng.coin(p) {
                g.add_edge(VertexId(u), VertexId(v)).expect("simple by construction");
            }
        }
    }
    Ok(g)
}
