//! Removing edges between the inner vertices of distinct short ears.
//!
//! Starting from an open decomposition whose short ears are all pendant,
//! [`nicify`] repeatedly takes the first edge joining inner vertices of two
//! short ears and merges the ears involved into one longer pendant ear. The
//! pair is found by scanning short ears by index, their inner vertices by
//! position, and neighbors by vertex id.
//!
//! For 3-ears `P' = a-v-w-b` and `P'' = c-x-y-d` joined by the edge `vy`,
//! the cases are:
//!
//! | label              | situation                       | new ear              |
//! |--------------------|---------------------------------|----------------------|
//! | `N2a`              | `b != c`                        | `b-w-v-y-x-c`        |
//! | `N2bI`             | `b == c`, `x ~ v` (or `x ~ w`)  | `b-w-v-x-y-d`        |
//! | `N2bII-long`       | `x ~ z`, `z` inside a long ear  | `b-w-v-y-x-z`        |
//! | `N2bII-2`          | `z` inside a 2-ear `g-z-h`      | `g-z-x-y-v-w-b`      |
//! | `N2bII-3-distinct` | `z` inside `g-i-z-h`, `g != b`  | `b-w-v-y-x-z-i-g`    |
//! | `N2bII-3-coincide` | same with `g == b`              | `g-i-z-x-y-d`        |
//!
//! A 2-ear `a-z-b` next to a 3-ear `c-x-y-d` through `zx` gives `N1`, the
//! ear `a-z-x-y-d` (or `b-z-x-y-d` when `a == d`). Two adjacent 2-ears
//! (`N0`) merge into a 3-ear, which lowers the even-ear count by two; that
//! can only happen on input that did not have the minimum count.
//!
//! A new ear goes into the slot of the ear it replaces, or right after the
//! ear introducing one of its endpoints if that comes later.

use crate::ear::{Ear, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::trace::Trace;
use crate::transform::{rewrite, Slot, Stepper};

/// Open, every short ear pendant, and no edge between inner vertices of two
/// distinct short ears.
pub fn is_nice(g: &Graph, d: &EarDecomposition) -> bool {
    d.is_open() && short_ears_pendant(d) && first_short_pair(g, d).is_none()
}

/// Rewrites `d` into a nice decomposition. See the module docs.
pub fn nicify(g: &Graph, d: &EarDecomposition) -> Result<EarDecomposition> {
    nicify_traced(g, d, false, &mut Trace::default())
}

/// [`nicify`] with a step trace. With `certified`, the input is known to
/// have the minimum number of even ears and any step lowering it is an error.
pub fn nicify_traced(
    g: &Graph,
    d: &EarDecomposition,
    certified: bool,
    trace: &mut Trace,
) -> Result<EarDecomposition> {
    if let Some(v) = d.validate(g).first() {
        return Err(Error::precondition(format!("invalid decomposition: {v}")));
    }
    if !d.is_open() {
        return Err(Error::precondition("decomposition is not open"));
    }
    if !short_ears_pendant(d) {
        return Err(Error::precondition("a short ear is not pendant"));
    }
    if !g.check_min_degree(3) {
        return Err(Error::precondition("minimum degree below 3"));
    }
    let mut st = Stepper::new(g, certified, "nicify", trace);
    let mut d = d.clone().canonical();
    while let Some(pair) = first_short_pair(g, &d) {
        st.tick()?;
        let step = merge_pair(g, &d, pair)?;
        if !step.ear.is_open() {
            return Err(Error::invariant(format!("case {}: new ear is closed", step.case)));
        }
        if step.case.starts_with("N2bII") && step.ear.is_even() != (step.case == "N2bII-2") {
            return Err(Error::invariant(format!(
                "case {}: new ear {} has unexpected parity",
                step.case, step.ear
            )));
        }
        let slot = placement(g, &d, step.slot, &step.ear);
        let next = rewrite(&d, &step.deleted, vec![(slot, step.ear)])?;
        d = st.commit(&d, next, step.case, step.deleted)?;
        if !short_ears_pendant(&d) {
            return Err(Error::invariant("a short ear stopped being pendant"));
        }
    }
    Ok(d)
}

fn short_ears_pendant(d: &EarDecomposition) -> bool {
    d.ears
        .iter()
        .zip(d.pendant_flags())
        .all(|(e, f)| !e.is_short() || f == Some(true))
}

/// Ear `i` with inner vertex `a`, ear `j` with inner vertex `b`, edge `ab`.
#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    a: Vertex,
    j: usize,
    b: Vertex,
}

fn first_short_pair(g: &Graph, d: &EarDecomposition) -> Option<Pair> {
    let owner = d.internal_owner(g.n());
    for (i, ear) in d.ears.iter().enumerate().filter(|(_, e)| e.is_short()) {
        for &a in ear.internal() {
            for &b in g.neighbors(a) {
                if let Some(j) = owner[b] {
                    if j != i && d.ears[j].is_short() {
                        return Some(Pair { i, a, j, b });
                    }
                }
            }
        }
    }
    None
}

struct Step {
    case: &'static str,
    ear: Ear,
    deleted: Vec<usize>,
    /// Index of the deleted ear whose slot the new ear takes.
    slot: usize,
}

/// Oriented copy of a short ear with `inner` at position `at`.
fn orient(ear: &Ear, inner: Vertex, at: usize) -> Vec<Vertex> {
    if ear.vertices()[at] == inner {
        ear.vertices().to_vec()
    } else {
        ear.reversed().vertices().to_vec()
    }
}

fn merge_pair(g: &Graph, d: &EarDecomposition, pair: Pair) -> Result<Step> {
    let (ei, ej) = (&d.ears[pair.i], &d.ears[pair.j]);
    match (ei.edge_count(), ej.edge_count()) {
        (2, 2) => Ok(merge_two_ears(d, pair)),
        (2, 3) => Ok(merge_two_three(d, pair.i, pair.a, pair.j, pair.b)),
        (3, 2) => Ok(merge_two_three(d, pair.j, pair.b, pair.i, pair.a)),
        (3, 3) => merge_three_ears(g, d, pair),
        _ => Err(Error::invariant("pair of ears is not short")),
    }
}

/// Two 2-ears joined through their inner vertices become one 3-ear.
fn merge_two_ears(d: &EarDecomposition, pair: Pair) -> Step {
    let (ei, ej) = (&d.ears[pair.i], &d.ears[pair.j]);
    let ends_i = [ei.first(), ei.last()];
    let ends_j = [ej.first(), ej.last()];
    let (s, t) = ends_i
        .iter()
        .flat_map(|&s| ends_j.iter().map(move |&t| (s, t)))
        .find(|(s, t)| s != t)
        .expect("two open ears have distinct endpoints somewhere");
    Step {
        case: "N0",
        ear: Ear::new(vec![s, pair.a, pair.b, t]),
        deleted: vec![pair.i, pair.j],
        slot: pair.i,
    }
}

/// 2-ear `a-z-b` (index `p1`) and 3-ear `c-x-y-d` (index `p2`) with edge `zx`.
fn merge_two_three(d: &EarDecomposition, p1: usize, z: Vertex, p2: usize, x: Vertex) -> Step {
    let two = d.ears[p1].vertices();
    let (a, b) = (two[0], two[2]);
    let three = orient(&d.ears[p2], x, 1);
    let (y, dd) = (three[2], three[3]);
    let start = if a != dd { a } else { b };
    Step {
        case: "N1",
        ear: Ear::new(vec![start, z, x, y, dd]),
        deleted: vec![p1, p2],
        slot: p1,
    }
}

/// 3-ears `a-v-w-b` (index `pair.i`) and `c-x-y-d` (index `pair.j`) with edge `vy`.
fn merge_three_ears(g: &Graph, d: &EarDecomposition, pair: Pair) -> Result<Step> {
    let (p1, p2) = (pair.i, pair.j);
    let first = orient(&d.ears[p1], pair.a, 1);
    let second = orient(&d.ears[p2], pair.b, 2);
    let [a, v, w, b] = [first[0], first[1], first[2], first[3]];
    let [c, x, y, dd] = [second[0], second[1], second[2], second[3]];
    let step = |case, path: Vec<Vertex>, deleted: Vec<usize>, slot| Step {
        case,
        ear: Ear::new(path),
        deleted,
        slot,
    };
    if b != c {
        return Ok(step("N2a", vec![b, w, v, y, x, c], vec![p1, p2], p1));
    }
    if g.has_edge(x, v) {
        return Ok(step("N2bI", vec![b, w, v, x, y, dd], vec![p1, p2], p1));
    }
    if g.has_edge(x, w) {
        return Ok(step("N2bI", vec![a, v, y, x, w, b], vec![p1, p2], p1));
    }
    let z = g
        .neighbors(x)
        .iter()
        .copied()
        .find(|&z| z != b && z != y)
        .ok_or_else(|| Error::invariant(format!("vertex {x} has degree below 3")))?;
    let owner = d.internal_owner(g.n());
    let r = match owner[z] {
        Some(r) if !d.ears[r].is_long() => r,
        _ => {
            return Ok(step("N2bII-long", vec![b, w, v, y, x, z], vec![p1, p2], p1));
        }
    };
    let re = &d.ears[r];
    if re.edge_count() == 2 {
        let end = [re.first(), re.last()]
            .into_iter()
            .filter(|&e| e != b)
            .min()
            .expect("an open ear has an endpoint other than b");
        return Ok(step(
            "N2bII-2",
            vec![end, z, x, y, v, w, b],
            vec![p1, p2, r],
            p1,
        ));
    }
    let third = orient(re, z, 2);
    let (g_end, i) = (third[0], third[1]);
    if g_end != b {
        Ok(step(
            "N2bII-3-distinct",
            vec![b, w, v, y, x, z, i, g_end],
            vec![p1, p2, r],
            p1,
        ))
    } else {
        Ok(step("N2bII-3-coincide", vec![g_end, i, z, x, y, dd], vec![p2, r], p2))
    }
}

/// The slot of ear `slot`, moved after the ear that introduces an endpoint
/// of `ear` when that ear comes later.
fn placement(g: &Graph, d: &EarDecomposition, slot: usize, ear: &Ear) -> Slot {
    let owner = d.internal_owner(g.n());
    let latest = [ear.first(), ear.last()]
        .into_iter()
        .filter_map(|e| owner[e])
        .max();
    match latest {
        Some(k) if k > slot => Slot::After(k),
        _ => Slot::At(slot),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::named;
    use crate::graph::Graph;

    #[test]
    fn k4_long_cycle_is_nice() {
        let g = named::complete(4);
        let d = EarDecomposition::from_paths(0, vec![vec![0, 2, 1, 3, 0], vec![0, 1], vec![2, 3]]);
        assert!(is_nice(&g, &d));
        assert_eq!(nicify(&g, &d).unwrap(), d);
    }

    #[test]
    fn adjacent_2_ears_merge_into_a_3_ear() {
        // K33 with parts {0,1,2} and {3,4,5}; the 2-ears 0-5-1 and 3-2-4 are
        // joined by the trivial ear 2-5.
        let g = named::complete_bipartite(3, 3);
        let d = EarDecomposition::from_paths(
            0,
            vec![
                vec![0, 3, 1, 4, 0],
                vec![0, 5, 1],
                vec![3, 2, 4],
                vec![2, 5],
            ],
        );
        assert!(d.is_valid(&g));
        assert!(!is_nice(&g, &d));
        let out = nicify(&g, &d).unwrap();
        assert!(is_nice(&g, &out) && out.is_valid(&g));
        assert!(out.even_count() < d.even_count());
    }

    #[test]
    fn three_ear_merge_through_a_coinciding_third_ear() {
        // Closed ear 0-1-2-3-4-0; 3-ears P' = 1-5-6-2, P'' = 2-7-8-3 and
        // R = 2-9-10-4. The edge 5-8 joins P' and P''; they share the end 2,
        // 7 is not adjacent to 5 or 6, and its neighbor 10 lies inside R,
        // whose end next to 9 is 2 again.
        let g = Graph::new(
            11,
            [
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (1, 5), (5, 6), (6, 2),
                (2, 7), (7, 8), (8, 3),
                (2, 9), (9, 10), (10, 4),
                (5, 8), (7, 10), (0, 6), (0, 9),
            ],
        )
        .unwrap();
        let d = EarDecomposition::from_paths(
            0,
            vec![
                vec![0, 1, 2, 3, 4, 0],
                vec![1, 5, 6, 2],
                vec![2, 7, 8, 3],
                vec![2, 9, 10, 4],
                vec![5, 8],
                vec![7, 10],
                vec![0, 6],
                vec![0, 9],
            ],
        );
        assert!(d.is_valid(&g) && g.check_min_degree(3));
        let mut trace = Trace::default();
        let out = nicify_traced(&g, &d, true, &mut trace).unwrap();
        assert_eq!(trace.cases(), ["N2bII-3-coincide"]);
        assert_eq!(out.ears[2].vertices(), &[2, 9, 10, 7, 8, 3]);
        assert!(is_nice(&g, &out));
        assert_eq!(out.even_count(), d.even_count());
    }
    #[test]
    fn three_ear_merge_through_a_distinct_third_ear() {
        // As above, but R = 3-9-10-4 ends at 3 next to 9, away from 2.
        let g = Graph::new(
            11,
            [
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (1, 5), (5, 6), (6, 2),
                (2, 7), (7, 8), (8, 3),
                (3, 9), (9, 10), (10, 4),
                (5, 8), (7, 10), (0, 6), (0, 9),
            ],
        )
        .unwrap();
        let d = EarDecomposition::from_paths(
            0,
            vec![
                vec![0, 1, 2, 3, 4, 0],
                vec![1, 5, 6, 2],
                vec![2, 7, 8, 3],
                vec![3, 9, 10, 4],
                vec![5, 8],
                vec![7, 10],
                vec![0, 6],
                vec![0, 9],
            ],
        );
        assert!(d.is_valid(&g) && g.check_min_degree(3));
        let mut trace = Trace::default();
        let out = nicify_traced(&g, &d, true, &mut trace).unwrap();
        assert_eq!(trace.cases(), ["N2bII-3-distinct"]);
        assert_eq!(out.ears[1].vertices(), &[2, 6, 5, 8, 7, 10, 9, 3]);
        assert_eq!(out.nontrivial_count(), 2);
        assert!(is_nice(&g, &out));
    }
}

