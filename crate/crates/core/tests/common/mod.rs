//! Instance families shared by the integration tests.

#![allow(dead_code)]

use pvds::generator::make_pumpkin;
use pvds::{Digraph, Instance, VertexId};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Every ordered pair of distinct live vertices, ascending.
pub fn pairs(g: &Digraph) -> Vec<(VertexId, VertexId)> {
    let vs: Vec<VertexId> = g.vertices().collect();
    vs.iter()
        .flat_map(|&s| vs.iter().filter(move |&&t| t != s).map(move |&t| (s, t)))
        .collect()
}

/// Low-degree digraph meant to reach the late branching rules. Vertex 0 is
/// the intended source and 1 the sink; every other vertex gets out-degree
/// 1-3, no arc enters 0, in-degrees stay at most 3, and no antiparallel
/// pairs are created.
pub fn sparse_digraph(n: usize, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Digraph::with_vertices(n);
    for u in (0..n as u32).filter(|&u| u != 1) {
        let want = if u == 0 {
            1 + rng.next_u64() % 2
        } else {
            [1, 2, 2, 3, 3][(rng.next_u64() % 5) as usize]
        };
        for _ in 0..want * 3 {
            if g.out_degree(VertexId(u)) as u64 >= want {
                break;
            }
            let v = 1 + (rng.next_u64() % (n as u64 - 1)) as u32;
            let (a, b) = (VertexId(u), VertexId(v));
            if v != u && !g.has_edge(a, b) && !g.has_edge(b, a) && g.in_degree(b) < 3 {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// `s -> t` plus extra `s`-`t` paths and an optional stray vertex hanging
/// between two path vertices. Source 0, sink 1.
pub fn direct_arc_instances() -> Vec<Digraph> {
    let mut out = Vec::new();
    for extra in [vec![2], vec![3], vec![2, 2], vec![2, 3], vec![3, 3, 2], vec![4]] {
        let (mut g, s, t) = make_pumpkin(&extra).unwrap();
        g.add_edge(s, t).unwrap();
        out.push(g.clone());
        let x = g.add_vertex();
        g.add_edge(VertexId(2), x).unwrap();
        g.add_edge(x, t).unwrap();
        out.push(g);
    }
    out
}

pub fn reversed(inst: &Instance) -> Instance {
    Instance {
        g: inst.g.reverse(),
        k: inst.k,
        s: inst.t,
        t: inst.s,
    }
}
