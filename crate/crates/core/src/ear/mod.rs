//! Ears and ear decompositions.
//!
//! An [`EarDecomposition`] stores the root vertex and the ordered ear list.
//! The first ear is the closed ear through the root; trivial ears (single
//! edges) live in the same list so that the ears partition the edge set.
//! Transformations in this crate keep the list in *canonical* order: all
//! nontrivial ears first, trivial ears after them. Moving a trivial ear
//! later never invalidates a decomposition, since it introduces no vertex.
//!
//! Ear indices are 0-based positions in [`EarDecomposition::ears`]; human
//! facing messages use the 1-based `P1, P2, ...` numbering.

mod build;
mod evenmin;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge_key, Graph, Vertex};

pub use build::{build_open_decomposition, build_open_decomposition_from, greedy_parity_decomposition};
pub use evenmin::{minimize_even_ears, phi_bruteforce, EvenminOutcome, SearchLimits};

/// A path `v0 .. vl` with `l >= 1` edges; `v0 == vl` is allowed (closed ear).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ear(Vec<Vertex>);

impl Ear {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        assert!(vertices.len() >= 2, "an ear has at least one edge");
        Ear(vertices)
    }

    pub fn trivial(u: Vertex, v: Vertex) -> Self {
        Ear(vec![u, v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.0.len() - 1
    }

    pub fn first(&self) -> Vertex {
        self.0[0]
    }

    pub fn last(&self) -> Vertex {
        self.0[self.0.len() - 1]
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.first(), self.last())
    }

    pub fn has_endpoint(&self, v: Vertex) -> bool {
        self.first() == v || self.last() == v
    }

    /// The other endpoint, if `v` is one.
    pub fn other_endpoint(&self, v: Vertex) -> Option<Vertex> {
        if self.first() == v {
            Some(self.last())
        } else if self.last() == v {
            Some(self.first())
        } else {
            None
        }
    }

    pub fn internal(&self) -> &[Vertex] {
        &self.0[1..self.0.len() - 1]
    }

    pub fn is_internal(&self, v: Vertex) -> bool {
        self.internal().contains(&v)
    }

    pub fn is_closed(&self) -> bool {
        self.first() == self.last()
    }

    pub fn is_open(&self) -> bool {
        !self.is_closed()
    }

    pub fn is_trivial(&self) -> bool {
        self.edge_count() == 1
    }

    pub fn is_short(&self) -> bool {
        matches!(self.edge_count(), 2 | 3)
    }

    pub fn is_long(&self) -> bool {
        self.edge_count() >= 4
    }

    pub fn is_even(&self) -> bool {
        self.edge_count().is_multiple_of(2)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn reversed(&self) -> Ear {
        let mut v = self.0.clone();
        v.reverse();
        Ear(v)
    }

    /// Oriented copy starting at endpoint `v`.
    pub fn from_endpoint(&self, v: Vertex) -> Option<Ear> {
        if self.first() == v {
            Some(self.clone())
        } else if self.last() == v {
            Some(self.reversed())
        } else {
            None
        }
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.0.iter().position(|&w| w == v)
    }
}

impl fmt::Display for Ear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("-"))
    }
}

/// Concatenates oriented paths that share their junction vertices.
pub(crate) fn join_paths(parts: &[&[Vertex]]) -> Ear {
    let mut out: Vec<Vertex> = Vec::new();
    for part in parts {
        if let Some(&last) = out.last() {
            assert_eq!(last, part[0], "paths must meet at their junction");
            out.extend_from_slice(&part[1..]);
        } else {
            out.extend_from_slice(part);
        }
    }
    Ear::new(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarDecomposition {
    pub root: Vertex,
    pub ears: Vec<Ear>,
}

/// One broken rule of an ear decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoEars,
    RootOutOfRange { root: Vertex },
    VertexOutOfRange { ear: usize, vertex: Vertex },
    NotAnEdge { ear: usize, u: Vertex, v: Vertex },
    RepeatedVertex { ear: usize, vertex: Vertex },
    EndpointNotPresent { ear: usize, vertex: Vertex },
    InternalVertexAlreadyPresent { ear: usize, vertex: Vertex },
    EdgeReused { ear: usize, u: Vertex, v: Vertex },
    EdgeNotCovered { u: Vertex, v: Vertex },
    VertexNotSpanned { vertex: Vertex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match *self {
            NoEars => write!(f, "decomposition has no ears"),
            RootOutOfRange { root } => write!(f, "root {root} is not a vertex"),
            VertexOutOfRange { ear, vertex } => {
                write!(f, "ear {} uses unknown vertex {vertex}", ear + 1)
            }
            NotAnEdge { ear, u, v } => write!(f, "ear {} uses non-edge {u}-{v}", ear + 1),
            RepeatedVertex { ear, vertex } => {
                write!(f, "ear {} repeats vertex {vertex}", ear + 1)
            }
            EndpointNotPresent { ear, vertex } => {
                write!(f, "ear {} endpoint {vertex} not yet present", ear + 1)
            }
            InternalVertexAlreadyPresent { ear, vertex } => write!(
                f,
                "ear {} internal vertex already present ({vertex})",
                ear + 1
            ),
            EdgeReused { ear, u, v } => write!(f, "ear {} reuses edge {u}-{v}", ear + 1),
            EdgeNotCovered { u, v } => write!(f, "edge {u}-{v} not covered"),
            VertexNotSpanned { vertex } => write!(f, "vertex {vertex} not spanned"),
        }
    }
}

impl EarDecomposition {
    pub fn new(root: Vertex, ears: Vec<Ear>) -> Self {
        EarDecomposition { root, ears }
    }

    /// Convenience constructor from raw vertex sequences.
    pub fn from_paths(root: Vertex, paths: Vec<Vec<Vertex>>) -> Self {
        EarDecomposition {
            root,
            ears: paths.into_iter().map(Ear::new).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ears.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ears.is_empty()
    }

    pub fn ear(&self, i: usize) -> &Ear {
        &self.ears[i]
    }

    /// Checks every ear-decomposition rule against `g`.
    pub fn validate(&self, g: &Graph) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = g.n();
        if self.ears.is_empty() {
            out.push(Violation::NoEars);
            return out;
        }
        if self.root >= n {
            out.push(Violation::RootOutOfRange { root: self.root });
            return out;
        }
        let mut present = vec![false; n];
        present[self.root] = true;
        let mut used: HashSet<(Vertex, Vertex)> = HashSet::new();
        for (i, ear) in self.ears.iter().enumerate() {
            if let Some(&v) = ear.vertices().iter().find(|&&v| v >= n) {
                out.push(Violation::VertexOutOfRange { ear: i, vertex: v });
                continue;
            }
            let mut seen = HashSet::new();
            let body = if ear.is_closed() {
                &ear.vertices()[..ear.vertices().len() - 1]
            } else {
                ear.vertices()
            };
            for &v in body {
                if !seen.insert(v) {
                    out.push(Violation::RepeatedVertex { ear: i, vertex: v });
                }
            }
            for (u, v) in ear.edges() {
                if !g.has_edge(u, v) {
                    out.push(Violation::NotAnEdge { ear: i, u, v });
                } else if !used.insert(edge_key(u, v)) {
                    let (a, b) = edge_key(u, v);
                    out.push(Violation::EdgeReused { ear: i, u: a, v: b });
                }
            }
            let (a, b) = ear.endpoints();
            for end in [a, b] {
                if !present[end] {
                    out.push(Violation::EndpointNotPresent { ear: i, vertex: end });
                }
            }
            for &v in ear.internal() {
                if present[v] {
                    out.push(Violation::InternalVertexAlreadyPresent { ear: i, vertex: v });
                }
            }
            for &v in ear.vertices() {
                present[v] = true;
            }
        }
        for &(u, v) in g.edges() {
            if !used.contains(&(u, v)) {
                out.push(Violation::EdgeNotCovered { u, v });
            }
        }
        for (v, &p) in present.iter().enumerate() {
            if !p {
                out.push(Violation::VertexNotSpanned { vertex: v });
            }
        }
        out
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.validate(g).is_empty()
    }

    /// First ear closed through the root, every later ear open.
    pub fn is_open(&self) -> bool {
        match self.ears.split_first() {
            Some((first, rest)) => {
                first.is_closed() && first.first() == self.root && rest.iter().all(Ear::is_open)
            }
            None => false,
        }
    }

    pub fn even_count(&self) -> usize {
        self.ears.iter().filter(|e| e.is_even()).count()
    }

    pub fn nontrivial_count(&self) -> usize {
        self.ears.iter().filter(|e| !e.is_trivial()).count()
    }

    /// Number of nontrivial ears having `v` as an endpoint, per vertex.
    fn endpoint_load(&self, n: usize) -> Vec<usize> {
        let mut load = vec![0; n];
        for ear in self.ears.iter().filter(|e| !e.is_trivial()) {
            load[ear.first()] += 1;
            if ear.is_open() {
                load[ear.last()] += 1;
            }
        }
        load
    }

    fn vertex_bound(&self) -> usize {
        self.ears
            .iter()
            .flat_map(|e| e.vertices().iter().copied())
            .chain(std::iter::once(self.root))
            .max()
            .map_or(0, |v| v + 1)
    }

    /// Pendant flag per ear; `None` for trivial ears.
    pub fn pendant_flags(&self) -> Vec<Option<bool>> {
        let load = self.endpoint_load(self.vertex_bound());
        self.ears
            .iter()
            .map(|ear| {
                (!ear.is_trivial()).then(|| ear.internal().iter().all(|&v| load[v] == 0))
            })
            .collect()
    }

    /// Whether nontrivial ear `i` is pendant: no other nontrivial ear has an
    /// endpoint among its internal vertices.
    pub fn classify_pendant(&self, i: usize) -> Result<bool> {
        let ear = self.ears.get(i).ok_or(Error::EarIndexOutOfRange {
            index: i,
            len: self.ears.len(),
        })?;
        if ear.is_trivial() {
            return Err(Error::TrivialEar(i));
        }
        Ok(self.pendant_flags()[i].unwrap_or(false))
    }

    /// Number of pendant nontrivial ears.
    pub fn pi(&self) -> usize {
        self.pendant_flags().iter().filter(|f| **f == Some(true)).count()
    }

    /// Number of pendant 3-ears.
    pub fn pi3(&self) -> usize {
        self.pendant_flags()
            .iter()
            .zip(&self.ears)
            .filter(|(f, e)| **f == Some(true) && e.edge_count() == 3)
            .count()
    }

    /// Stable partition: nontrivial ears first, then trivial ears.
    pub fn canonicalize(&mut self) {
        let (mut nontrivial, trivial): (Vec<Ear>, Vec<Ear>) =
            self.ears.drain(..).partition(|e| !e.is_trivial());
        nontrivial.extend(trivial);
        self.ears = nontrivial;
    }

    pub fn canonical(mut self) -> Self {
        self.canonicalize();
        self
    }

    /// Vertices covered by the root and ears `0..i`.
    pub fn present_before(&self, i: usize, n: usize) -> Vec<bool> {
        let mut present = vec![false; n];
        present[self.root] = true;
        for ear in &self.ears[..i] {
            for &v in ear.vertices() {
                present[v] = true;
            }
        }
        present
    }

    /// For every vertex, the nontrivial ear holding it as an internal vertex.
    /// The root maps to `None`.
    pub fn internal_owner(&self, n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; n];
        for (i, ear) in self.ears.iter().enumerate() {
            for &v in ear.internal() {
                owner[v] = Some(i);
            }
        }
        owner
    }

    /// Edge ids of all nontrivial ears, sorted.
    pub fn nontrivial_edge_ids(&self, g: &Graph) -> Vec<usize> {
        let mut ids: Vec<usize> = self
            .ears
            .iter()
            .filter(|e| !e.is_trivial())
            .flat_map(|e| e.edges())
            .map(|(u, v)| g.edge_id(u, v).expect("ear edge exists in graph"))
            .collect();
        ids.sort_unstable();
        ids
    }

    /// Rotates a closed first ear so it starts and ends at the root.
    pub(crate) fn anchor_first_ear(&mut self) {
        let Some(first) = self.ears.first_mut() else {
            return;
        };
        if !first.is_closed() || first.first() == self.root {
            return;
        }
        let cycle = &first.vertices()[..first.vertices().len() - 1];
        if let Some(pos) = cycle.iter().position(|&v| v == self.root) {
            let mut rotated: Vec<Vertex> = cycle[pos..].iter().chain(&cycle[..pos]).copied().collect();
            rotated.push(self.root);
            *first = Ear::new(rotated);
        }
    }

    /// Errors unless the decomposition is valid for `g`.
    pub(crate) fn ensure_valid(&self, g: &Graph, context: &str) -> Result<()> {
        let violations = self.validate(g);
        if violations.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = violations.iter().map(ToString::to_string).collect();
            Err(Error::invariant(format!("{context}: {}", msgs.join("; "))))
        }
    }
}
