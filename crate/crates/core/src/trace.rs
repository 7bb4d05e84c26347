//! Step traces of the decomposition transformations.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub iteration: usize,
    pub stage: String,
    pub case: String,
    /// 0-based indices, in the decomposition before the step, of the ears
    /// the step removed or rewrote.
    pub ears: Vec<usize>,
    /// Even-ear count after the step.
    pub even_ears: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn push(&mut self, step: TraceStep) {
        self.steps.push(step);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Case labels in order.
    pub fn cases(&self) -> Vec<&str> {
        self.steps.iter().map(|s| s.case.as_str()).collect()
    }

    /// One JSON object per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            let line = serde_json::to_string(step).expect("trace steps serialize");
            writeln!(out, "{line}").unwrap();
        }
        out
    }
}
