//! Replacing degree-2 vertices by `K4` gadgets, and mapping solutions back.
//!
//! A degree-2 vertex `v` with neighbors `a < b` becomes a `K4` on local
//! vertices `0..4`: local 0 keeps the id `v` and takes the edge to `a`, local 1
//! takes the edge to `b`, locals 1..4 get fresh ids past the original range.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge_key, EdgeId, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gadget {
    /// The replaced vertex of the original graph.
    pub original: Vertex,
    /// Ids of local vertices 0..4 in the lifted graph; 0 and 1 attach outward.
    pub vertices: [Vertex; 4],
    /// Original neighbors attached to local 0 and local 1.
    pub neighbors: [Vertex; 2],
}

impl Gadget {
    /// The six internal edges.
    pub fn internal_edges(&self) -> [(Vertex, Vertex); 6] {
        let v = self.vertices;
        [
            edge_key(v[0], v[1]),
            edge_key(v[0], v[2]),
            edge_key(v[0], v[3]),
            edge_key(v[1], v[2]),
            edge_key(v[1], v[3]),
            edge_key(v[2], v[3]),
        ]
    }

    /// Hamiltonian path between the attachments: local 0, 2, 3, 1.
    pub fn witness_path(&self) -> [(Vertex, Vertex); 3] {
        let v = self.vertices;
        [(v[0], v[2]), (v[2], v[3]), (v[3], v[1])]
    }

    fn port(&self, neighbor: Vertex) -> Vertex {
        if self.neighbors[0] == neighbor {
            self.vertices[0]
        } else {
            self.vertices[1]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetMap {
    pub original_n: usize,
    pub gadgets: Vec<Gadget>,
}

impl GadgetMap {
    pub fn len(&self) -> usize {
        self.gadgets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gadgets.is_empty()
    }

    /// Gadget index owning each lifted vertex.
    fn owners(&self, lifted_n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; lifted_n];
        for (j, gd) in self.gadgets.iter().enumerate() {
            for &v in &gd.vertices {
                owner[v] = Some(j);
            }
        }
        owner
    }

    /// The original vertex a lifted vertex stands for.
    pub fn project_vertex(&self, v: Vertex) -> Vertex {
        if v < self.original_n {
            v
        } else {
            self.gadgets[(v - self.original_n) / 3].original
        }
    }
}

/// Lifts `g` by replacing every degree-2 vertex with a `K4` gadget.
///
/// With `k` gadgets the result has `n + 3k` vertices and `m + 6k` edges, and
/// minimum degree at least 3 whenever `g` has no vertex of degree below 2.
pub fn degree2_to_k4(g: &Graph) -> Result<(Graph, GadgetMap)> {
    if !g.is_two_vertex_connected() {
        return Err(Error::NotTwoConnected);
    }
    let n = g.n();
    let mut gadget_of = vec![None; n];
    let mut gadgets = Vec::new();
    for v in (0..n).filter(|&v| g.degree(v) == 2) {
        let j = gadgets.len();
        let nb = g.neighbors(v);
        gadgets.push(Gadget {
            original: v,
            vertices: [v, n + 3 * j, n + 3 * j + 1, n + 3 * j + 2],
            neighbors: [nb[0], nb[1]],
        });
        gadget_of[v] = Some(j);
    }
    let port = |u: Vertex, w: Vertex| gadget_of[u].map_or(u, |j: usize| gadgets[j].port(w));
    let mut edges: Vec<(Vertex, Vertex)> =
        g.edges().iter().map(|&(u, w)| (port(u, w), port(w, u))).collect();
    for gd in &gadgets {
        edges.extend(gd.internal_edges());
    }
    let lifted = Graph::new(n + 3 * gadgets.len(), edges)?;
    Ok((
        lifted,
        GadgetMap {
            original_n: n,
            gadgets,
        },
    ))
}

/// Extends a solution of `g` to the lifted graph with one witness path per
/// gadget; the result has `|h| + 3k` edges.
pub fn lift_solution(g: &Graph, lifted: &Graph, map: &GadgetMap, h: &[EdgeId]) -> Vec<EdgeId> {
    let mut gadget_of = vec![None; map.original_n];
    for (j, gd) in map.gadgets.iter().enumerate() {
        gadget_of[gd.original] = Some(j);
    }
    let port = |u: Vertex, w: Vertex| gadget_of[u].map_or(u, |j: usize| map.gadgets[j].port(w));
    let mut out: Vec<EdgeId> = h
        .iter()
        .map(|&id| {
            let (u, w) = g.edge(id);
            lifted
                .edge_id(port(u, w), port(w, u))
                .expect("lifted graph carries every original edge")
        })
        .collect();
    for gd in &map.gadgets {
        out.extend(
            gd.witness_path()
                .iter()
                .map(|&(a, b)| lifted.edge_id(a, b).expect("gadget edge")),
        );
    }
    out.sort_unstable();
    out
}

/// Projects a 2-connected spanning subgraph of the lifted graph back to `g`.
///
/// Returns the projected edge ids and whether the projection is consistent:
/// 2-connected and spanning in `g`, with the lifted solution paying at least
/// three edges per gadget on top of it.
pub fn lift_and_project(
    g: &Graph,
    lifted: &Graph,
    map: &GadgetMap,
    h_lifted: &[EdgeId],
) -> Result<(Vec<EdgeId>, bool)> {
    if lifted.n() != map.original_n + 3 * map.len() || g.n() != map.original_n {
        return Err(Error::precondition("gadget map does not match the graphs"));
    }
    if !lifted.spanning_subgraph(h_lifted).is_two_vertex_connected() {
        return Err(Error::precondition(
            "lifted solution is not a 2-connected spanning subgraph",
        ));
    }
    let owner = map.owners(lifted.n());
    let mut internal_used = vec![Vec::new(); map.len()];
    let mut projected = Vec::new();
    for &id in h_lifted {
        let (a, b) = lifted.edge(id);
        match (owner[a], owner[b]) {
            (Some(i), Some(j)) if i == j => internal_used[i].push((a, b)),
            _ => {
                let (u, w) = (map.project_vertex(a), map.project_vertex(b));
                let pid = g.edge_id(u, w).ok_or_else(|| {
                    Error::GadgetMalformed(format!("lifted edge {a}-{b} has no original {u}-{w}"))
                })?;
                projected.push(pid);
            }
        }
    }
    for (gd, used) in map.gadgets.iter().zip(&internal_used) {
        let local = Graph::new(lifted.n(), used.iter().copied()).expect("subset of a simple graph");
        let spans = gd.vertices[1..]
            .iter()
            .all(|&v| reaches(&local, gd.vertices[0], v));
        if !spans {
            return Err(Error::GadgetMalformed(format!(
                "gadget of vertex {} is not internally connected",
                gd.original
            )));
        }
    }
    projected.sort_unstable();
    projected.dedup();
    let consistent = g.spanning_subgraph(&projected).is_two_vertex_connected()
        && h_lifted.len() >= projected.len() + 3 * map.len();
    Ok((projected, consistent))
}

fn reaches(g: &Graph, from: Vertex, to: Vertex) -> bool {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(u) = stack.pop() {
        if u == to {
            return true;
        }
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::named;

    #[test]
    fn c4_lift_shape() {
        let (lifted, map) = degree2_to_k4(&named::cycle(4)).unwrap();
        assert_eq!((lifted.n(), lifted.m(), map.len()), (16, 28, 4));
        assert!(lifted.check_min_degree(3));
        assert!(lifted.is_two_vertex_connected());
        let gd = &map.gadgets[0];
        assert_eq!(gd.vertices, [0, 4, 5, 6]);
        assert_eq!(gd.neighbors, [1, 3]);
        assert!(lifted.has_edge(0, 1) || lifted.has_edge(0, 7));
    }

    #[test]
    fn graph_without_degree_two_is_unchanged() {
        let g = named::complete(4);
        let (lifted, map) = degree2_to_k4(&g).unwrap();
        assert!(map.is_empty());
        assert_eq!(lifted, g);
    }

    #[test]
    fn lifted_cycle_round_trip() {
        let g = named::cycle(5);
        let (lifted, map) = degree2_to_k4(&g).unwrap();
        let all: Vec<EdgeId> = (0..g.m()).collect();
        let h_lifted = lift_solution(&g, &lifted, &map, &all);
        assert_eq!(h_lifted.len(), 5 + 15);
        assert!(lifted.spanning_subgraph(&h_lifted).is_two_vertex_connected());
        let (h, ok) = lift_and_project(&g, &lifted, &map, &h_lifted).unwrap();
        assert!(ok);
        assert_eq!(h, all);
    }

    #[test]
    fn rejects_non_2vc_lifted_solution() {
        let g = named::cycle(3);
        let (lifted, map) = degree2_to_k4(&g).unwrap();
        let err = lift_and_project(&g, &lifted, &map, &[0, 1]).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(_)));
    }
}
