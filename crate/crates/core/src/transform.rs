//! Shared machinery for the step-by-step decomposition rewrites.

use crate::ear::{Ear, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::{edge_key, Graph, Vertex};
use crate::trace::{Trace, TraceStep};

/// Where a new ear goes, relative to the ears of the old decomposition.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Slot {
    /// Into the position of a deleted ear.
    At(usize),
    /// Right after the given ear.
    After(usize),
}

/// Deletes the `deleted` ears and inserts `placed` ones. Edges of new ears
/// come from the deleted ears or, failing that, from existing trivial ears;
/// freed edges left over become trivial ears at the end.
pub(crate) fn rewrite(
    d: &EarDecomposition,
    deleted: &[usize],
    placed: Vec<(Slot, Ear)>,
) -> Result<EarDecomposition> {
    let mut keep = vec![true; d.len()];
    let mut freed: Vec<(Vertex, Vertex)> = Vec::new();
    for &i in deleted {
        if !std::mem::replace(&mut keep[i], false) {
            return Err(Error::invariant(format!("ear {} deleted twice", i + 1)));
        }
        freed.extend(d.ears[i].edges().map(|(u, v)| edge_key(u, v)));
    }
    let mut keyed: Vec<((usize, u8), Ear)> = d
        .ears
        .iter()
        .enumerate()
        .filter(|&(i, _)| keep[i])
        .map(|(i, e)| ((i, 0), e.clone()))
        .collect();
    for (slot, ear) in placed {
        for (u, v) in ear.edges() {
            let k = edge_key(u, v);
            if let Some(pos) = freed.iter().position(|&f| f == k) {
                freed.remove(pos);
            } else if let Some(pos) = keyed
                .iter()
                .position(|(_, e)| e.is_trivial() && edge_key(e.first(), e.last()) == k)
            {
                keyed.remove(pos);
            } else {
                return Err(Error::invariant(format!("edge {}-{} is not free", k.0, k.1)));
            }
        }
        let key = match slot {
            Slot::At(i) if keep[i] => {
                return Err(Error::invariant(format!("slot of ear {} is occupied", i + 1)))
            }
            Slot::At(i) => (i, 1),
            Slot::After(i) => (i, 2),
        };
        keyed.push((key, ear));
    }
    keyed.sort_by_key(|(k, _)| *k);
    let mut ears: Vec<Ear> = keyed.into_iter().map(|(_, e)| e).collect();
    ears.extend(freed.into_iter().map(|(u, v)| Ear::trivial(u, v)));
    Ok(EarDecomposition::new(d.root, ears).canonical())
}

/// Validates and records each step of a transformation.
pub(crate) struct Stepper<'a> {
    pub g: &'a Graph,
    /// The input is known to have the minimum number of even ears, so no
    /// step may reduce the count.
    pub certified: bool,
    pub stage: &'static str,
    pub trace: &'a mut Trace,
    pub iteration: usize,
    pub max_iterations: usize,
}

impl<'a> Stepper<'a> {
    pub fn new(g: &'a Graph, certified: bool, stage: &'static str, trace: &'a mut Trace) -> Self {
        let m = g.m() + 1;
        Stepper {
            g,
            certified,
            stage,
            trace,
            iteration: 0,
            max_iterations: 4 * m * m,
        }
    }

    pub fn tick(&self) -> Result<()> {
        if self.iteration >= self.max_iterations {
            return Err(Error::invariant(format!(
                "{} did not finish within {} steps",
                self.stage, self.max_iterations
            )));
        }
        Ok(())
    }

    pub fn commit(
        &mut self,
        before: &EarDecomposition,
        after: EarDecomposition,
        case: &str,
        ears: Vec<usize>,
    ) -> Result<EarDecomposition> {
        let context = format!("{} case {case}", self.stage);
        after.ensure_valid(self.g, &context)?;
        if !after.is_open() {
            return Err(Error::invariant(format!("{context}: result is not open")));
        }
        let (was, now) = (before.even_count(), after.even_count());
        if now > was {
            return Err(Error::invariant(format!(
                "{context}: even ears rose from {was} to {now}"
            )));
        }
        if now < was && self.certified {
            return Err(Error::invariant(format!(
                "{context}: even ears fell from {was} to {now} on input certified minimal"
            )));
        }
        self.iteration += 1;
        self.trace.push(TraceStep {
            iteration: self.iteration,
            stage: self.stage.to_string(),
            case: case.to_string(),
            ears,
            even_ears: now,
        });
        Ok(after)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rewrite_regroups_freed_edges() {
        // K4 as triangle 0-1-2-0, ear 0-3-1, trivial 2-3.
        let d = EarDecomposition::from_paths(0, vec![vec![0, 1, 2, 0], vec![0, 3, 1], vec![2, 3]]);
        let merged = Ear::new(vec![0, 2, 1, 3, 0]);
        let out = rewrite(&d, &[0, 1], vec![(Slot::At(0), merged.clone())]).unwrap();
        assert_eq!(out.ears[0], merged);
        assert_eq!(out.ears[1..], [Ear::trivial(2, 3), Ear::trivial(0, 1)]);
    }

    #[test]
    fn rewrite_takes_edges_from_trivial_ears() {
        let d = EarDecomposition::from_paths(0, vec![vec![0, 1, 2, 0], vec![0, 3, 1], vec![2, 3]]);
        let out = rewrite(&d, &[1], vec![(Slot::At(1), Ear::new(vec![0, 3, 2]))]).unwrap();
        assert_eq!(out.ears, vec![Ear::new(vec![0, 1, 2, 0]), Ear::new(vec![0, 3, 2]), Ear::trivial(1, 3)]);
    }

    #[test]
    fn rewrite_rejects_unknown_edges() {
        let d = EarDecomposition::from_paths(0, vec![vec![0, 1, 2, 0], vec![0, 3, 1], vec![2, 3]]);
        let err = rewrite(&d, &[1], vec![(Slot::At(1), Ear::new(vec![0, 3, 1, 2]))]).unwrap_err();
        assert!(matches!(err, Error::InvariantViolation(_)));
    }
}
