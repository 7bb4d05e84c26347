//! Simple undirected graphs on dense vertex ids.
//!
//! A [`Graph`] is immutable once built. Edges are stored canonically as
//! `(u, v)` with `u < v`, sorted lexicographically; the position of an edge in
//! that order is its *edge id*, which the oracles and the pipeline use to
//! describe edge subsets.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

/// Unordered vertex pair in canonical `(min, max)` form.
pub fn edge_key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    ids: HashMap<(Vertex, Vertex), EdgeId>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::new(raw.n, raw.edges)
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph {
            n: g.n,
            edges: g.edges,
        }
    }
}

impl Graph {
    /// Builds a simple graph. Self-loops and repeated pairs are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::NotSimple(format!("self-loop at vertex {u}")));
            }
            list.push(edge_key(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::NotSimple(format!(
                "parallel edge {}-{}",
                w[0].0, w[0].1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        let mut ids = HashMap::with_capacity(list.len());
        for (id, &(u, v)) in list.iter().enumerate() {
            adj[u].push(v);
            adj[v].push(u);
            ids.insert((u, v), id);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
            ids,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> (Vertex, Vertex) {
        self.edges[id]
    }

    /// Neighbors of `v` in increasing id order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.ids.contains_key(&edge_key(u, v))
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.ids.get(&edge_key(u, v)).copied()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// True iff every vertex has degree at least `d`.
    pub fn check_min_degree(&self, d: usize) -> bool {
        self.adj.iter().all(|nb| nb.len() >= d)
    }

    /// The spanning subgraph keeping only the listed edges.
    pub fn spanning_subgraph(&self, ids: &[EdgeId]) -> Graph {
        Graph::new(self.n, ids.iter().map(|&id| self.edges[id]))
            .expect("subset of a simple graph is simple")
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length");
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabelling preserves simplicity")
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_avoiding(None)
    }

    /// Connectivity of the graph with `skip` (and its edges) deleted.
    pub fn is_connected_avoiding(&self, skip: Option<Vertex>) -> bool {
        let Some(start) = (0..self.n).find(|&v| Some(v) != skip) else {
            return true;
        };
        let mut seen = vec![false; self.n];
        if let Some(s) = skip {
            seen[s] = true;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.n - usize::from(skip.is_some())
    }

    /// Cut vertices, via an iterative lowpoint DFS from every unvisited root.
    pub fn articulation_points(&self) -> Vec<Vertex> {
        const UNSEEN: usize = usize::MAX;
        let n = self.n;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != UNSEEN {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbor index)
            let mut stack = vec![(root, UNSEEN, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (u, parent, idx) = *top;
                if idx < self.adj[u].len() {
                    top.2 += 1;
                    let w = self.adj[u][idx];
                    if disc[w] == UNSEEN {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((w, u, 0));
                    } else if w != parent {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != UNSEEN {
                        low[parent] = low[parent].min(low[u]);
                        if parent != root && low[u] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// Connected, at least three vertices, and no cut vertex.
    pub fn is_two_vertex_connected(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.articulation_points().is_empty()
    }
}
