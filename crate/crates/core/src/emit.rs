//! Report, DOT and trace output.

use std::fmt::Write as _;
use std::path::Path;

use crate::bounds::AnalysisReport;
use crate::ear::EarDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::trace::Trace;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

pub fn report_json(report: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

/// Graphviz rendering: nontrivial ears coloured by index and labelled
/// `P1, P2, ...`; trivial ears dashed grey; inner vertices of pendant short
/// ears drawn as boxes, with their ears' labels marked `pendant`.
pub fn to_dot(g: &Graph, d: &EarDecomposition) -> String {
    let flags = d.pendant_flags();
    let owner = d.internal_owner(g.n());
    let pendant_short = |i: usize| flags[i] == Some(true) && d.ears[i].is_short();
    let mut out = String::from("graph ears {\n  node [shape=circle];\n");
    for (v, own) in owner.iter().enumerate() {
        let mut attrs = Vec::new();
        if v == d.root {
            attrs.push("peripheries=2".to_string());
        }
        if own.is_some_and(pendant_short) {
            attrs.push("shape=box".to_string());
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  {v};");
        } else {
            let _ = writeln!(out, "  {v} [{}];", attrs.join(", "));
        }
    }
    for (i, ear) in d.ears.iter().enumerate() {
        for (u, v) in ear.edges() {
            if ear.is_trivial() {
                let _ = writeln!(out, "  {u} -- {v} [style=dashed, color=gray];");
                continue;
            }
            let color = PALETTE[i % PALETTE.len()];
            let label = if pendant_short(i) {
                format!("P{} pendant", i + 1)
            } else {
                format!("P{}", i + 1)
            };
            let _ = writeln!(out, "  {u} -- {v} [color=\"{color}\", label=\"{label}\"];");
        }
    }
    out.push_str("}\n");
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_report(path: &Path, report: &AnalysisReport) -> Result<()> {
    write_file(path, &report_json(report))
}

pub fn write_trace(path: &Path, trace: &Trace) -> Result<()> {
    write_file(path, &trace.to_jsonl())
}

pub fn write_dot(path: &Path, g: &Graph, d: &EarDecomposition) -> Result<()> {
    write_file(path, &to_dot(g, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::named;

    #[test]
    fn dot_marks_trivial_and_pendant_ears() {
        let g = named::complete_bipartite(3, 3);
        let d = EarDecomposition::from_paths(
            0,
            vec![vec![0, 3, 1, 4, 0], vec![3, 2, 5, 1], vec![0, 5], vec![2, 4]],
        );
        let dot = to_dot(&g, &d);
        assert!(dot.starts_with("graph ears {"));
        assert!(dot.trim_end().ends_with('}'));
        assert_eq!(dot.matches("style=dashed").count(), 2);
        assert_eq!(dot.matches("P2 pendant").count(), 3);
        assert!(dot.contains("  2 [shape=box];"));
        assert!(dot.contains("  0 [peripheries=2];"));
    }

    #[test]
    fn report_keys() {
        let json = report_json(&AnalysisReport::default());
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        for key in [
            "n", "m", "phi", "phi_certified", "pi", "pi3", "m_size", "mu", "v_i", "v_d", "v_m",
            "l_phi", "l_mu", "output_edges", "opt", "ratio", "claims", "trace_path",
        ] {
            assert!(keys.contains(&key), "{key}");
        }
        assert!(value["opt"].is_null());
        assert!(value["claims"]["c1_ok"].is_boolean());
    }
}
