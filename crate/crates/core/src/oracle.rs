//! Exact oracles for small instances.
//!
//! [`opt_2vcss_bruteforce`] finds a minimum 2-vertex-connected spanning
//! subgraph by branch and bound over edge subsets, and
//! [`hamiltonian_cycle`] is an independent backtracking search. Both are
//! exponential and guarded by explicit size limits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};

/// Default edge limit for [`opt_2vcss_bruteforce`].
pub const DEFAULT_OPT_GUARD: usize = 20;

/// Hard ceiling: subsets are bitmasks over edge ids.
const MASK_BITS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptSolution {
    pub size: usize,
    /// Lexicographically first optimal edge-id set, ascending.
    pub witness: Vec<EdgeId>,
}

/// Minimum 2-vertex-connected spanning subgraph of `g`.
///
/// Tries target sizes `k = n, n+1, ...`; for each, a depth-first search
/// decides edges in id order, including before excluding, so the first hit
/// is the lexicographically first optimal witness.
pub fn opt_2vcss_bruteforce(g: &Graph, max_edges: usize) -> Result<OptSolution> {
    if g.m() > max_edges.min(MASK_BITS) {
        return Err(Error::InstanceTooLarge {
            what: "edge count",
            size: g.m(),
            limit: max_edges.min(MASK_BITS),
        });
    }
    if !g.is_two_vertex_connected() {
        return Err(Error::NotTwoConnected);
    }
    let mut search = SubsetSearch::new(g);
    for k in g.n()..=g.m() {
        if let Some(mask) = search.find(k) {
            let witness: Vec<EdgeId> = (0..g.m()).filter(|&i| mask >> i & 1 == 1).collect();
            return Ok(OptSolution { size: k, witness });
        }
    }
    Err(Error::invariant("a 2-connected graph is its own solution"))
}

struct SubsetSearch<'a> {
    g: &'a Graph,
    k: usize,
    /// Included edges so far.
    inc: u64,
    /// Edges still available: included or undecided.
    avail: u64,
    inc_deg: Vec<usize>,
    avail_deg: Vec<usize>,
}

impl<'a> SubsetSearch<'a> {
    fn new(g: &'a Graph) -> Self {
        SubsetSearch {
            g,
            k: 0,
            inc: 0,
            avail: 0,
            inc_deg: vec![0; g.n()],
            avail_deg: vec![0; g.n()],
        }
    }

    fn find(&mut self, k: usize) -> Option<u64> {
        self.k = k;
        self.inc = 0;
        self.avail = full_mask(self.g.m());
        self.inc_deg.iter_mut().for_each(|d| *d = 0);
        for v in 0..self.g.n() {
            self.avail_deg[v] = self.g.degree(v);
        }
        self.descend(0, 0)
    }

    fn descend(&mut self, idx: usize, count: usize) -> Option<u64> {
        let m = self.g.m();
        if count == self.k {
            // Remaining edges are implicitly excluded.
            let chosen = self.inc;
            let ok = (0..self.g.n()).all(|v| self.inc_deg[v] >= 2)
                && two_connected_mask(self.g, chosen);
            return ok.then_some(chosen);
        }
        if count + (m - idx) < self.k {
            return None;
        }
        let (u, w) = self.g.edge(idx);

        // Include.
        self.inc |= 1 << idx;
        self.inc_deg[u] += 1;
        self.inc_deg[w] += 1;
        let slack_ok = self.degree_sum_fits();
        if slack_ok {
            if let Some(found) = self.descend(idx + 1, count + 1) {
                return Some(found);
            }
        }
        self.inc &= !(1 << idx);
        self.inc_deg[u] -= 1;
        self.inc_deg[w] -= 1;

        // Exclude.
        self.avail &= !(1 << idx);
        self.avail_deg[u] -= 1;
        self.avail_deg[w] -= 1;
        let mut result = None;
        if self.avail_deg[u] >= 2 && self.avail_deg[w] >= 2 && two_connected_mask(self.g, self.avail)
        {
            result = self.descend(idx + 1, count);
        }
        self.avail |= 1 << idx;
        self.avail_deg[u] += 1;
        self.avail_deg[w] += 1;
        result
    }

    /// Every final degree is at least `max(current, 2)`, and degrees sum to `2k`.
    fn degree_sum_fits(&self) -> bool {
        let need: usize = self.inc_deg.iter().map(|&d| d.max(2)).sum();
        need <= 2 * self.k
    }
}

fn full_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// 2-vertex-connectivity of the spanning subgraph selected by `mask`.
fn two_connected_mask(g: &Graph, mask: u64) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    let mut bits = mask;
    while bits != 0 {
        let id = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (u, w) = g.edge(id);
        adj[u].push(w);
        adj[w].push(u);
    }
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 1;
    disc[0] = 0;
    let mut root_children = 0;
    let mut stack = vec![(0usize, UNSEEN, 0usize)];
    while let Some(top) = stack.last_mut() {
        let (u, parent, idx) = *top;
        if let Some(&w) = adj[u].get(idx) {
            top.2 += 1;
            if disc[w] == UNSEEN {
                disc[w] = time;
                low[w] = time;
                time += 1;
                if u == 0 {
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
                if parent != 0 && low[u] >= disc[parent] {
                    return false;
                }
            }
        }
    }
    time == n && root_children == 1
}

/// A Hamiltonian cycle as a closed vertex sequence starting at 0, if any.
pub fn hamiltonian_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let mut on_path = vec![false; n];
    let mut path = vec![0];
    on_path[0] = true;
    if extend_path(g, &mut path, &mut on_path) {
        path.push(0);
        Some(path)
    } else {
        None
    }
}

fn extend_path(g: &Graph, path: &mut Vec<Vertex>, on_path: &mut [bool]) -> bool {
    let last = *path.last().expect("path starts at 0");
    if path.len() == g.n() {
        return g.has_edge(last, 0);
    }
    for &w in g.neighbors(last) {
        if on_path[w] {
            continue;
        }
        // Fix orientation: the second vertex is smaller than the last.
        if path.len() == g.n() - 1 && path.len() >= 2 && w < path[1] {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        if extend_path(g, path, on_path) {
            return true;
        }
        path.pop();
        on_path[w] = false;
    }
    false
}

/// Whether `g` is Hamiltonian, decided two independent ways.
///
/// A Hamiltonian cycle is exactly a 2-connected spanning subgraph with `n`
/// edges, so the subset search and the cycle search must agree; a mismatch is
/// reported as an invariant violation.
pub fn hamiltonicity_crosscheck(g: &Graph, max_edges: usize) -> Result<bool> {
    let by_opt = opt_2vcss_bruteforce(g, max_edges)?.size == g.n();
    let by_cycle = match hamiltonian_cycle(g) {
        Some(cycle) => {
            let ids: Vec<EdgeId> = cycle
                .windows(2)
                .map(|w| g.edge_id(w[0], w[1]).expect("cycle follows edges"))
                .collect();
            if !g.spanning_subgraph(&ids).is_two_vertex_connected() {
                return Err(Error::invariant("cycle search returned a non-cycle"));
            }
            true
        }
        None => false,
    };
    if by_opt != by_cycle {
        return Err(Error::invariant(format!(
            "hamiltonicity disagreement: subset search says {by_opt}, cycle search says {by_cycle}"
        )));
    }
    Ok(by_opt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::named;

    #[test]
    fn opt_of_small_families() {
        assert_eq!(opt_2vcss_bruteforce(&named::complete(4), 20).unwrap().size, 4);
        assert_eq!(opt_2vcss_bruteforce(&named::cycle(6), 20).unwrap().size, 6);
        assert_eq!(opt_2vcss_bruteforce(&named::petersen(), 20).unwrap().size, 11);
        assert_eq!(
            opt_2vcss_bruteforce(&named::complete_bipartite(2, 4), 20).unwrap().size,
            8
        );
    }

    #[test]
    fn witness_is_lexicographically_first() {
        let g = named::complete(4);
        // Edges: 01 02 03 12 13 23; the first Hamiltonian cycle in id order
        // is 0-1-3-2-0 = {01, 02, 13, 23}.
        let sol = opt_2vcss_bruteforce(&g, 20).unwrap();
        assert_eq!(sol.witness, vec![0, 1, 4, 5]);
    }

    #[test]
    fn guard_rejects_large_graphs() {
        let err = opt_2vcss_bruteforce(&named::petersen(), 10).unwrap_err();
        assert!(matches!(err, Error::InstanceTooLarge { size: 15, limit: 10, .. }));
    }

    #[test]
    fn hamiltonicity_of_named_graphs() {
        assert!(hamiltonicity_crosscheck(&named::complete(5), 20).unwrap());
        assert!(hamiltonicity_crosscheck(&named::hypercube(3), 20).unwrap());
        assert!(!hamiltonicity_crosscheck(&named::petersen(), 20).unwrap());
        assert!(!hamiltonicity_crosscheck(&named::complete_bipartite(2, 3), 20).unwrap());
    }

    #[test]
    fn mask_connectivity_matches_graph_predicate() {
        let g = named::wheel(4);
        for mask in 0..(1u64 << g.m()) {
            let ids: Vec<EdgeId> = (0..g.m()).filter(|&i| mask >> i & 1 == 1).collect();
            assert_eq!(
                two_connected_mask(&g, mask),
                g.spanning_subgraph(&ids).is_two_vertex_connected(),
                "mask {mask:b}"
            );
        }
    }
}
