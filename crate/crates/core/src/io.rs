//! Edge-list and DIMACS graph files.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with 0-based ids.
//! Anything after `#` is a comment. DIMACS: `p edge n m`, then `e u v` lines
//! with 1-based ids; lines starting with `c` are comments.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{edge_key, Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
}

impl Format {
    /// DIMACS if the first meaningful line is a `p` line, else edge list.
    pub fn detect(text: &str) -> Format {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("c ") && *l != "c");
        match first {
            Some(l) if l.starts_with("p ") => Format::Dimacs,
            _ => Format::EdgeList,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "edgelist" => Ok(Format::EdgeList),
            "dimacs" => Ok(Format::Dimacs),
            other => Err(format!("unknown format {other:?}, expected edgelist or dimacs")),
        }
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::EdgeList => parse_edgelist(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

pub fn read_graph(path: &Path, format: Option<Format>) -> Result<Graph> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_graph(&text, format.unwrap_or_else(|| Format::detect(&text)))
}

pub fn serialize_graph(g: &Graph, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::EdgeList => {
            let _ = writeln!(out, "{} {}", g.n(), g.m());
            for &(u, v) in g.edges() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        Format::Dimacs => {
            let _ = writeln!(out, "p edge {} {}", g.n(), g.m());
            for &(u, v) in g.edges() {
                let _ = writeln!(out, "e {} {}", u + 1, v + 1);
            }
        }
    }
    out
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("{what} {tok:?} is not a non-negative integer")))
}

/// Collects edges, rejecting self-loops, duplicates and out-of-range ids.
struct EdgeCollector {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    seen: std::collections::HashSet<(Vertex, Vertex)>,
}

impl EdgeCollector {
    fn new(n: usize) -> Self {
        EdgeCollector {
            n,
            edges: Vec::new(),
            seen: Default::default(),
        }
    }

    fn add(&mut self, u: Vertex, v: Vertex, line: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::parse(
                line,
                format!("edge {u}-{v} is out of range for {} vertices", self.n),
            ));
        }
        if u == v {
            return Err(Error::parse(line, format!("self-loop at vertex {u}")));
        }
        if !self.seen.insert(edge_key(u, v)) {
            return Err(Error::parse(line, format!("duplicate edge {u}-{v}")));
        }
        self.edges.push((u, v));
        Ok(())
    }

    fn finish(self, declared: usize, line: usize) -> Result<Graph> {
        if self.edges.len() != declared {
            return Err(Error::parse(
                line,
                format!("header declares {declared} edges, found {}", self.edges.len()),
            ));
        }
        Graph::new(self.n, self.edges)
    }
}

fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, EdgeCollector)> = None;
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let a = number(toks.next(), line, "first field")?;
        let b = number(toks.next(), line, "second field")?;
        if let Some(extra) = toks.next() {
            return Err(Error::parse(line, format!("unexpected token {extra:?}")));
        }
        match header.as_mut() {
            None => header = Some((b, EdgeCollector::new(a))),
            Some((_, edges)) => edges.add(a, b, line)?,
        }
    }
    let (m, edges) = header.ok_or_else(|| Error::parse(1, "missing header line \"n m\""))?;
    edges.finish(m, last)
}

fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, EdgeCollector)> = None;
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        let content = raw.trim();
        let mut toks = content.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(Error::parse(line, "second problem line"));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(Error::parse(line, format!("unsupported problem type {other:?}")))
                    }
                }
                let n = number(toks.next(), line, "vertex count")?;
                let m = number(toks.next(), line, "edge count")?;
                header = Some((m, EdgeCollector::new(n)));
            }
            Some("e") => {
                let (_, edges) = header
                    .as_mut()
                    .ok_or_else(|| Error::parse(line, "edge line before the problem line"))?;
                let u = number(toks.next(), line, "endpoint")?;
                let v = number(toks.next(), line, "endpoint")?;
                if u == 0 || v == 0 {
                    return Err(Error::parse(line, "DIMACS vertex ids start at 1"));
                }
                edges.add(u - 1, v - 1, line)?;
            }
            Some(other) => return Err(Error::parse(line, format!("unknown line type {other:?}"))),
        }
    }
    let (m, edges) = header.ok_or_else(|| Error::parse(1, "missing problem line \"p edge n m\""))?;
    edges.finish(m, last)
}
