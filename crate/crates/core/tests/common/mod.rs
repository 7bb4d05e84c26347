//! Instance corpus shared by the integration tests.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twovc::generate::{generate_instance, InstanceKind, LiftBase};
use twovc::graph::edge_key;
use twovc::Graph;

pub struct Instance {
    pub name: String,
    pub graph: Graph,
    /// Seed for the pipeline (root choice).
    pub seed: u64,
}

fn push(out: &mut Vec<Instance>, name: String, kind: &InstanceKind, seed: u64, max_edges: usize) {
    if let Ok(graph) = generate_instance(kind, seed) {
        if graph.m() <= max_edges {
            let seed = out.len() as u64;
            out.push(Instance { name, graph, seed });
        }
    }
}

/// Random edges are added until every degree is at least 3; retried until
/// 2-connected and within `max_edges`.
pub fn random_min3(n: usize, max_edges: usize, seed: u64) -> Option<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let mut edges = std::collections::BTreeSet::new();
        let mut deg = vec![0; n];
        while deg.iter().any(|&d| d < 3) && edges.len() <= max_edges {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v && edges.insert(edge_key(u, v)) {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        if edges.len() > max_edges {
            continue;
        }
        let g = Graph::new(n, edges).expect("simple by construction");
        if g.is_two_vertex_connected() {
            return Some(g);
        }
    }
    None
}

/// Min-degree-3, 2-connected instances with at most `max_edges` edges:
/// random cubic graphs, wheels, named graphs, gadget lifts, and random
/// graphs of minimum degree 3.
pub fn corpus(max_edges: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for (n, seeds) in [(4, 1), (6, 30), (8, 70), (10, 80), (12, 80)] {
        for s in 0..seeds {
            push(&mut out, format!("regular3-n{n}-s{s}"), &InstanceKind::Regular3 { n }, s, max_edges);
        }
    }
    for spokes in 3..=10 {
        push(&mut out, format!("wheel-{spokes}"), &InstanceKind::Wheel { spokes }, 0, max_edges);
    }
    push(&mut out, "hypercube-3".into(), &InstanceKind::Hypercube { dim: 3 }, 0, max_edges);
    for name in ["k5", "k6", "k33", "prism", "petersen"] {
        push(&mut out, name.into(), &InstanceKind::Named(name.into()), 0, max_edges);
    }
    let lifts = [
        (LiftBase::SubdividedCubic { n: 4, subdivisions: 1 }, 4),
        (LiftBase::SubdividedCubic { n: 4, subdivisions: 2 }, 8),
        (LiftBase::SubdividedCubic { n: 6, subdivisions: 1 }, 12),
        (LiftBase::Sparse { n: 4, m: 5 }, 2),
        (LiftBase::Sparse { n: 5, m: 7 }, 10),
    ];
    for (base, seeds) in lifts {
        for s in 0..seeds {
            push(&mut out, format!("lift-{base:?}-s{s}"), &InstanceKind::GadgetLift(base.clone()), s, max_edges);
        }
    }
    for (n, seeds) in [(6, 40), (7, 60), (8, 80), (9, 60), (10, 40)] {
        for s in 0..seeds {
            if let Some(graph) = random_min3(n, max_edges, 1000 * n as u64 + s) {
                let seed = out.len() as u64;
                out.push(Instance { name: format!("min3-n{n}-s{s}"), graph, seed });
            }
        }
    }
    out
}
