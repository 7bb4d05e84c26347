//! Instance generators: named families and seeded random graphs.
//!
//! Every generator used through [`generate_instance`] returns a simple,
//! 2-vertex-connected graph with minimum degree at least 3; randomized kinds
//! retry until that holds and are deterministic for a fixed seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadget::degree2_to_k4;
use crate::graph::{edge_key, Graph};

const MAX_ATTEMPTS: usize = 10_000;

pub mod named {
    use crate::graph::Graph;

    pub fn complete(k: usize) -> Graph {
        Graph::new(k, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)))).unwrap()
    }

    pub fn cycle(k: usize) -> Graph {
        assert!(k >= 3);
        Graph::new(k, (0..k).map(|i| (i, (i + 1) % k))).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::new(a + b, (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v)))).unwrap()
    }

    /// Hub 0 joined to the rim cycle `1..=spokes`.
    pub fn wheel(spokes: usize) -> Graph {
        assert!(spokes >= 3);
        let rim = (0..spokes).map(|i| (1 + i, 1 + (i + 1) % spokes));
        let hub = (1..=spokes).map(|v| (0, v));
        Graph::new(spokes + 1, rim.chain(hub)).unwrap()
    }

    pub fn hypercube(dim: u32) -> Graph {
        let n = 1usize << dim;
        let edges = (0..n).flat_map(|u| {
            (0..dim)
                .map(move |b| (u, u ^ (1 << b)))
                .filter(|&(u, v)| u < v)
        });
        Graph::new(n, edges).unwrap()
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    /// Triangular prism: two triangles joined by a perfect matching.
    pub fn prism() -> Graph {
        Graph::new(
            6,
            [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
    }

    /// Looks up `k<n>`, `c<n>`, `w<n>`, `q<d>`, `k33`, `petersen`, `prism`.
    pub fn by_name(name: &str) -> Option<Graph> {
        let name = name.to_ascii_lowercase();
        match name.as_str() {
            "petersen" => return Some(petersen()),
            "prism" => return Some(prism()),
            "k33" | "k3,3" => return Some(complete_bipartite(3, 3)),
            _ => {}
        }
        let (head, tail) = name.split_at(1);
        let k: usize = tail.parse().ok()?;
        match head {
            "k" if k >= 1 => Some(complete(k)),
            "c" if k >= 3 => Some(cycle(k)),
            "w" if k >= 3 => Some(wheel(k)),
            "q" if (1..=10).contains(&k) => Some(hypercube(k as u32)),
            _ => None,
        }
    }
}

/// Base graphs that get their degree-2 vertices replaced by `K4` gadgets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftBase {
    Cycle(usize),
    Named(String),
    /// Random cubic graph on `n` vertices with `subdivisions` edges subdivided.
    SubdividedCubic { n: usize, subdivisions: usize },
    /// Random 2-connected graph with `n` vertices, `m` edges and at least one
    /// degree-2 vertex.
    Sparse { n: usize, m: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    Regular3 { n: usize },
    Wheel { spokes: usize },
    Hypercube { dim: u32 },
    Named(String),
    GadgetLift(LiftBase),
}

/// Builds an instance of the requested kind.
pub fn generate_instance(kind: &InstanceKind, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = match kind {
        InstanceKind::Regular3 { n } => random_cubic(*n, &mut rng)?,
        InstanceKind::Wheel { spokes } => {
            if *spokes < 3 {
                return Err(Error::precondition("a wheel needs at least 3 spokes"));
            }
            named::wheel(*spokes)
        }
        InstanceKind::Hypercube { dim } => {
            if !(2..=10).contains(dim) {
                return Err(Error::precondition("hypercube dimension must be in 2..=10"));
            }
            named::hypercube(*dim)
        }
        InstanceKind::Named(name) => named::by_name(name)
            .ok_or_else(|| Error::precondition(format!("unknown graph name {name:?}")))?,
        InstanceKind::GadgetLift(base) => {
            let base = lift_base(base, &mut rng)?;
            degree2_to_k4(&base)?.0
        }
    };
    if !g.is_two_vertex_connected() {
        return Err(Error::NotTwoConnected);
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) < 3) {
        return Err(Error::MinDegreeTooLow {
            vertex: v,
            degree: g.degree(v),
            required: 3,
        });
    }
    Ok(g)
}

fn lift_base(base: &LiftBase, rng: &mut ChaCha8Rng) -> Result<Graph> {
    match base {
        LiftBase::Cycle(k) => {
            if *k < 3 {
                return Err(Error::precondition("cycle length must be at least 3"));
            }
            Ok(named::cycle(*k))
        }
        LiftBase::Named(name) => named::by_name(name)
            .ok_or_else(|| Error::precondition(format!("unknown graph name {name:?}"))),
        LiftBase::SubdividedCubic { n, subdivisions } => {
            let cubic = random_cubic(*n, rng)?;
            subdivide_random(&cubic, *subdivisions, rng)
        }
        LiftBase::Sparse { n, m } => random_sparse_with_degree2(*n, *m, rng),
    }
}

/// Uniform-ish random cubic graph via the pairing model, retried until simple
/// and 2-vertex-connected.
pub fn random_cubic<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::precondition("a cubic graph needs an even n >= 4"));
    }
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    for _ in 0..MAX_ATTEMPTS {
        points.shuffle(rng);
        let edges: Vec<(usize, usize)> = points.chunks(2).map(|c| (c[0], c[1])).collect();
        if let Ok(g) = Graph::new(n, edges) {
            if g.is_two_vertex_connected() {
                return Ok(g);
            }
        }
    }
    Err(Error::GenerationFailed {
        kind: format!("regular3(n={n})"),
        attempts: MAX_ATTEMPTS,
    })
}

/// Replaces `count` distinct random edges by paths of length two.
pub fn subdivide_random<R: Rng>(g: &Graph, count: usize, rng: &mut R) -> Result<Graph> {
    if count > g.m() {
        return Err(Error::precondition("more subdivisions than edges"));
    }
    let mut ids: Vec<usize> = (0..g.m()).collect();
    ids.shuffle(rng);
    let chosen = &ids[..count];
    let mut edges = Vec::with_capacity(g.m() + count);
    let mut next = g.n();
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        if chosen.contains(&id) {
            edges.push((u, next));
            edges.push((next, v));
            next += 1;
        } else {
            edges.push((u, v));
        }
    }
    Graph::new(next, edges)
}

/// Random 2-connected graph on `n` vertices and `m` edges with a vertex of
/// degree 2.
pub fn random_sparse_with_degree2<R: Rng>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| edge_key(u, v)))
        .collect();
    if n < 3 || m < n || m > pairs.len() {
        return Err(Error::precondition(format!(
            "no 2-connected graph with n={n}, m={m} and a degree-2 vertex"
        )));
    }
    for _ in 0..MAX_ATTEMPTS {
        let edges: Vec<(usize, usize)> = pairs.choose_multiple(rng, m).copied().collect();
        let g = Graph::new(n, edges).expect("distinct pairs");
        if g.is_two_vertex_connected() && (0..n).any(|v| g.degree(v) == 2) {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed {
        kind: format!("sparse(n={n}, m={m})"),
        attempts: MAX_ATTEMPTS,
    })
}
