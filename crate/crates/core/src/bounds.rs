//! Eardrums, earmuffs, lower bounds, and the edge-count inequalities of a
//! nice decomposition.
//!
//! The vertices split three ways: `V_M` holds the inner vertices of pendant
//! short ears, `V_D` those of pendant long ears, and `V_I` everything else
//! (the root and the inner vertices of non-pendant ears).
//!
//! All inequalities are checked in integers scaled by 4, so quarter
//! coefficients stay exact.

use serde::{Deserialize, Serialize};

use crate::ear::EarDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::nice::is_nice;

/// Default limit on `|M|` for [`max_earmuff_bruteforce`].
pub const DEFAULT_EARMUFF_GUARD: usize = 8;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    pub v_i: Vec<Vertex>,
    pub v_d: Vec<Vertex>,
    pub v_m: Vec<Vertex>,
}

/// Splits the vertices by the kind of ear holding them as inner vertices.
pub fn vertex_partition(g: &Graph, d: &EarDecomposition) -> VertexPartition {
    let flags = d.pendant_flags();
    let owner = d.internal_owner(g.n());
    let mut part = VertexPartition::default();
    for (v, o) in owner.into_iter().enumerate() {
        match o {
            Some(i) if flags[i] == Some(true) && d.ears[i].is_short() => part.v_m.push(v),
            Some(i) if flags[i] == Some(true) => part.v_d.push(v),
            _ => part.v_i.push(v),
        }
    }
    part
}

/// Components of the graph induced on the inner vertices of pendant short
/// ears. Each has one vertex or two adjacent ones.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eardrum {
    pub components: Vec<Vec<Vertex>>,
}

impl Eardrum {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

pub fn eardrum_of(g: &Graph, d: &EarDecomposition) -> Result<Eardrum> {
    if !is_nice(g, d) {
        return Err(Error::NotNice);
    }
    let v_m = vertex_partition(g, d).v_m;
    let mut in_m = vec![false; g.n()];
    for &v in &v_m {
        in_m[v] = true;
    }
    let mut seen = vec![false; g.n()];
    let mut components = Vec::new();
    for &v in &v_m {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        let mut comp = vec![v];
        let mut i = 0;
        while i < comp.len() {
            for &w in g.neighbors(comp[i]) {
                if in_m[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        if comp.len() > 2 {
            return Err(Error::invariant(format!(
                "eardrum component {comp:?} has more than two vertices"
            )));
        }
        comp.sort_unstable();
        components.push(comp);
    }
    Ok(Eardrum { components })
}

/// Paths through distinct eardrum components, each with both ends in `V_I`
/// and exactly one component as its inner vertices, whose union is a forest.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Earmuff {
    pub paths: Vec<Vec<Vertex>>,
    pub mu: usize,
}

impl Earmuff {
    /// Whether the graph on `V_I` with one edge per path (joining its ends)
    /// is a simple forest.
    pub fn contact_graph_is_forest(&self, n: usize) -> bool {
        let mut uf = UnionFind::new(n);
        self.paths.iter().all(|p| {
            let (a, b) = (p[0], p[p.len() - 1]);
            a != b && uf.union(a, b)
        })
    }
}

#[derive(Clone)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// False if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Maximum earmuff by exhaustive search over component subsets and path
/// choices.
///
/// Inner vertices of different paths are disjoint, so a cycle in the union
/// of paths is the same as a cycle (or repeated pair) among the end pairs.
pub fn max_earmuff_bruteforce(
    g: &Graph,
    m: &Eardrum,
    v_i: &[Vertex],
    guard: usize,
) -> Result<Earmuff> {
    if m.len() > guard {
        return Err(Error::InstanceTooLarge {
            what: "eardrum size",
            size: m.len(),
            limit: guard,
        });
    }
    let mut in_i = vec![false; g.n()];
    for &v in v_i {
        in_i[v] = true;
    }
    let candidates: Vec<Vec<Vec<Vertex>>> = m
        .components
        .iter()
        .map(|c| component_paths(g, c, &in_i))
        .collect();
    let mut search = EarmuffSearch {
        candidates: &candidates,
        chosen: Vec::new(),
        best: Vec::new(),
    };
    search.descend(0, UnionFind::new(g.n()));
    let paths = search.best;
    Ok(Earmuff {
        mu: paths.len(),
        paths,
    })
}

/// Candidate paths through one component, one per unordered end pair.
fn component_paths(g: &Graph, comp: &[Vertex], in_i: &[bool]) -> Vec<Vec<Vertex>> {
    let ends = |v: Vertex| -> Vec<Vertex> {
        g.neighbors(v).iter().copied().filter(|&u| in_i[u]).collect()
    };
    let mut paths: Vec<Vec<Vertex>> = Vec::new();
    let orders: Vec<Vec<Vertex>> = match comp {
        [z] => vec![vec![*z]],
        [x, y] => vec![vec![*x, *y], vec![*y, *x]],
        _ => Vec::new(),
    };
    for inner in orders {
        let (head, tail) = (inner[0], inner[inner.len() - 1]);
        for &u in &ends(head) {
            for &w in &ends(tail) {
                if u == w {
                    continue;
                }
                let mut p = vec![u];
                p.extend(&inner);
                p.push(w);
                let key = (u.min(w), u.max(w));
                let dup = paths.iter().any(|q| {
                    let (a, b) = (q[0], q[q.len() - 1]);
                    (a.min(b), a.max(b)) == key
                });
                if !dup {
                    paths.push(p);
                }
            }
        }
    }
    paths
}

struct EarmuffSearch<'a> {
    candidates: &'a [Vec<Vec<Vertex>>],
    chosen: Vec<Vec<Vertex>>,
    best: Vec<Vec<Vertex>>,
}

impl EarmuffSearch<'_> {
    fn descend(&mut self, idx: usize, uf: UnionFind) {
        if self.chosen.len() + (self.candidates.len() - idx) <= self.best.len() {
            return;
        }
        if idx == self.candidates.len() {
            self.best = self.chosen.clone();
            return;
        }
        for path in &self.candidates[idx] {
            let mut next = uf.clone();
            if next.union(path[0], path[path.len() - 1]) {
                self.chosen.push(path.clone());
                self.descend(idx + 1, next);
                self.chosen.pop();
            }
        }
        self.descend(idx + 1, uf);
    }
}

/// `(l_phi, l_mu)` with `l_phi = n - 1 + phi` and `l_mu = n - 1 + |M| - mu`.
pub fn lower_bounds(n: usize, phi: usize, m_size: usize, mu: usize) -> (usize, usize) {
    (n - 1 + phi, n - 1 + m_size - mu)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ClaimFlags {
    pub c1_ok: bool,
    pub c2_ok: bool,
    /// `None` when the earmuff was not computed.
    pub lemma3_ok: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub m: usize,
    pub phi: usize,
    pub phi_certified: bool,
    pub pi: usize,
    pub pi3: usize,
    pub m_size: usize,
    pub mu: Option<usize>,
    pub v_i: usize,
    pub v_d: usize,
    pub v_m: usize,
    pub l_phi: usize,
    pub l_mu: Option<usize>,
    pub output_edges: usize,
    pub opt: Option<usize>,
    pub ratio: Option<f64>,
    pub claims: ClaimFlags,
    pub trace_path: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
}

/// One checked inequality, both sides scaled by 4.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    /// `C1`, `C2`, `C2-mu`, `ear-C1`, `E1`, `E2`, `E3` or `L3`.
    pub claim: &'static str,
    pub ear: Option<usize>,
    pub lhs: i64,
    pub rhs: i64,
    pub relation: Relation,
}

impl ClaimCheck {
    fn le(claim: &'static str, ear: Option<usize>, lhs: i64, rhs: i64) -> Self {
        ClaimCheck {
            claim,
            ear,
            lhs,
            rhs,
            relation: Relation::Le,
        }
    }

    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::Le => self.lhs <= self.rhs,
            Relation::Eq => self.lhs == self.rhs,
        }
    }

    /// Whether the record belongs to the first (`C1`) or second (`C2`) bound.
    pub fn group(&self) -> &'static str {
        match self.claim {
            "C1" | "ear-C1" => "C1",
            "L3" => "L3",
            _ => "C2",
        }
    }
}

/// Checks the global and per-ear edge-count bounds of a nice decomposition.
///
/// `report` supplies `phi`, `pi`, `m_size`, `v_i`, and optionally `mu`;
/// `|E'|` is recomputed from `d`.
pub fn check_claims(g: &Graph, d: &EarDecomposition, report: &AnalysisReport) -> Result<Vec<ClaimCheck>> {
    if !is_nice(g, d) {
        return Err(Error::NotNice);
    }
    let flags = d.pendant_flags();
    let n = g.n() as i64;
    let phi = report.phi as i64;
    let pi = report.pi as i64;
    let e_prime: i64 = d.ears.iter().filter(|e| !e.is_trivial()).map(|e| e.edge_count() as i64).sum();
    let mut out = vec![
        ClaimCheck::le("C1", None, 4 * e_prime, 5 * (n - 1) + 3 * phi + 2 * pi),
        ClaimCheck::le(
            "C2",
            None,
            4 * e_prime,
            6 * n + 2 * phi - 4 * pi + 4 * report.m_size as i64 - report.v_i as i64 - 5,
        ),
    ];
    if let (Some(mu), Some(l_mu)) = (report.mu, report.l_mu) {
        out.push(ClaimCheck::le(
            "C2-mu",
            None,
            4 * e_prime,
            4 * l_mu as i64 + 2 * report.l_phi as i64 - pi,
        ));
        out.push(ClaimCheck::le("L3", None, mu as i64, report.v_i as i64 - 1));
    }
    for (i, ear) in d.ears.iter().enumerate() {
        let Some(pendant) = flags[i] else { continue };
        let len = ear.edge_count() as i64;
        let inner = ear.internal().len() as i64;
        let even = i64::from(ear.is_even());
        let slack = match len {
            2 | 4 => 3,
            3 => 2,
            _ => 0,
        };
        out.push(ClaimCheck::le("ear-C1", Some(i), 4 * len, 5 * inner + slack));
        if pendant && ear.is_short() {
            out.push(ClaimCheck {
                claim: "E1",
                ear: Some(i),
                lhs: 4 * len,
                rhs: 6 * inner + 2 * even,
                relation: Relation::Eq,
            });
        } else if pendant {
            out.push(ClaimCheck::le("E2", Some(i), 4 * len, 6 * inner + 2 * even - 4));
        } else {
            // Non-pendant ears are long in a nice decomposition.
            let rhs = if ear.is_long() { 5 * inner + 2 * even } else { -1 };
            out.push(ClaimCheck::le("E3", Some(i), 4 * len, rhs));
        }
    }
    Ok(out)
}

/// Summarises claim records; `lemma3` is the earmuff forest check, if run.
pub fn claim_flags(checks: &[ClaimCheck], lemma3: Option<bool>) -> ClaimFlags {
    let group_ok = |name: &str| checks.iter().filter(|c| c.group() == name).all(ClaimCheck::holds);
    let l3_records = checks.iter().any(|c| c.group() == "L3");
    ClaimFlags {
        c1_ok: group_ok("C1"),
        c2_ok: group_ok("C2"),
        lemma3_ok: lemma3.map(|forest| forest && (!l3_records || group_ok("L3"))),
    }
}
