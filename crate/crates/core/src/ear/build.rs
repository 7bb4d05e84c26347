use std::collections::VecDeque;

use crate::ear::{Ear, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Open ear decomposition rooted at vertex 0.
pub fn build_open_decomposition(g: &Graph) -> Result<EarDecomposition> {
    build_open_decomposition_from(g, 0)
}

/// Open ear decomposition from a DFS chain decomposition rooted at `root`.
///
/// Back edges are processed in DFS preorder of their upper endpoint; each one
/// starts a chain that climbs the DFS tree until it meets a vertex already
/// on an earlier chain. The first chain is a cycle through the root; in a
/// 2-vertex-connected graph every later chain is an open path.
pub fn build_open_decomposition_from(g: &Graph, root: Vertex) -> Result<EarDecomposition> {
    if !g.is_two_vertex_connected() {
        return Err(Error::NotTwoConnected);
    }
    if root >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: root,
            n: g.n(),
        });
    }
    let n = g.n();
    const NONE: usize = usize::MAX;
    let mut parent = vec![NONE; n];
    let mut disc = vec![NONE; n];
    let mut preorder = Vec::with_capacity(n);
    let mut stack = vec![(root, 0usize)];
    disc[root] = 0;
    preorder.push(root);
    while let Some(top) = stack.last_mut() {
        let (u, idx) = *top;
        if let Some(&w) = g.neighbors(u).get(idx) {
            top.1 += 1;
            if disc[w] == NONE {
                disc[w] = preorder.len();
                preorder.push(w);
                parent[w] = u;
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }

    let mut on_chain = vec![false; n];
    let mut ears = Vec::with_capacity(g.m() - n + 1);
    for &u in &preorder {
        for &w in g.neighbors(u) {
            let back_edge_down = disc[w] > disc[u] && parent[w] != u;
            if !back_edge_down {
                continue;
            }
            on_chain[u] = true;
            let mut chain = vec![u];
            let mut cur = w;
            loop {
                chain.push(cur);
                if on_chain[cur] {
                    break;
                }
                on_chain[cur] = true;
                cur = parent[cur];
            }
            ears.push(Ear::new(chain));
        }
    }

    let mut d = EarDecomposition::new(root, ears).canonical();
    d.anchor_first_ear();
    d.ensure_valid(g, "chain decomposition")?;
    if !d.is_open() {
        return Err(Error::invariant("chain decomposition is not open"));
    }
    Ok(d)
}

/// Step budget for the odd-ear path search of [`greedy_parity_decomposition`].
const ODD_SEARCH_BUDGET: usize = 20_000;

/// Open ear decomposition built ear by ear, preferring odd ears.
///
/// At every step the vertices placed so far form a 2-connected subgraph, so
/// an open ear always exists; a bounded path search looks for an odd one
/// before falling back to the BFS ear.
pub fn greedy_parity_decomposition(g: &Graph) -> Result<EarDecomposition> {
    if !g.is_two_vertex_connected() {
        return Err(Error::NotTwoConnected);
    }
    let n = g.n();
    let root = 0;
    let mut present = vec![false; n];
    present[root] = true;
    let mut used = vec![false; g.m()];
    let mut ears = Vec::new();
    let mut placed = 1;

    while placed < n {
        let closed = placed == 1;
        let ear = pick_ear(g, &present, closed)
            .ok_or_else(|| Error::invariant("no ear extends a 2-connected subgraph"))?;
        for (u, v) in ear.edges() {
            used[g.edge_id(u, v).expect("ear edges exist")] = true;
        }
        for &v in ear.internal() {
            present[v] = true;
            placed += 1;
        }
        ears.push(ear);
    }
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        if !used[id] {
            ears.push(Ear::trivial(u, v));
        }
    }
    let d = EarDecomposition::new(root, ears);
    d.ensure_valid(g, "greedy parity decomposition")?;
    Ok(d)
}

fn pick_ear(g: &Graph, present: &[bool], closed: bool) -> Option<Ear> {
    let mut fallback = None;
    let mut budget = ODD_SEARCH_BUDGET;
    for a in (0..g.n()).filter(|&a| present[a]) {
        for &x in g.neighbors(a).iter().filter(|&&x| !present[x]) {
            if let Some(ear) = odd_ear_search(g, present, a, x, closed, &mut budget) {
                return Some(ear);
            }
            if fallback.is_none() {
                fallback = bfs_ear(g, present, a, x, closed);
            }
        }
    }
    fallback
}

/// Bounded DFS over simple paths `a, x, ..., b` through unplaced vertices,
/// returning the first ear with an odd edge count.
fn odd_ear_search(
    g: &Graph,
    present: &[bool],
    a: Vertex,
    x: Vertex,
    closed: bool,
    budget: &mut usize,
) -> Option<Ear> {
    let mut on_path = vec![false; g.n()];
    let mut path = vec![a, x];
    on_path[x] = true;
    // (vertex, next neighbor index)
    let mut stack = vec![(x, 0usize)];
    while let Some(top) = stack.last_mut() {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let (p, idx) = *top;
        if idx == 0 {
            // Edge count of a..p..b is path.len(); odd means path.len() is odd.
            if path.len() % 2 == 1 {
                let internal = path.len() - 1;
                let end = g.neighbors(p).iter().copied().find(|&b| {
                    present[b] && if closed { b == a && internal >= 2 } else { b != a }
                });
                if let Some(b) = end {
                    let mut v = path.clone();
                    v.push(b);
                    return Some(Ear::new(v));
                }
            }
        }
        match g.neighbors(p).get(idx) {
            Some(&q) => {
                top.1 += 1;
                if !present[q] && !on_path[q] {
                    on_path[q] = true;
                    path.push(q);
                    stack.push((q, 0));
                }
            }
            None => {
                stack.pop();
                on_path[p] = false;
                path.pop();
            }
        }
    }
    None
}

/// Shortest ear starting with edge `a-x`, found by BFS through unplaced vertices.
fn bfs_ear(g: &Graph, present: &[bool], a: Vertex, x: Vertex, closed: bool) -> Option<Ear> {
    let n = g.n();
    const NONE: usize = usize::MAX;
    let mut prev = vec![NONE; n];
    prev[x] = a;
    let mut queue = VecDeque::from([x]);
    while let Some(p) = queue.pop_front() {
        for &b in g.neighbors(p) {
            let ok_end = if closed { b == a && p != x } else { b != a };
            if present[b] && ok_end {
                let mut rev = vec![b, p];
                let mut cur = p;
                while cur != x {
                    cur = prev[cur];
                    rev.push(cur);
                }
                rev.push(a);
                rev.reverse();
                return Some(Ear::new(rev));
            }
        }
        for &q in g.neighbors(p) {
            if !present[q] && prev[q] == NONE && q != x {
                prev[q] = p;
                queue.push_back(q);
            }
        }
    }
    None
}
