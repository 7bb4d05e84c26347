//! Making every short ear pendant.
//!
//! [`pendantize`] takes an open decomposition of a 2-connected graph of
//! minimum degree 3 and rewrites it until no nontrivial ear has an endpoint
//! inside a 2-ear or 3-ear. The rewrite never adds even ears. Each step is
//! validated, and a step that would break the decomposition is reported as
//! [`Error::InvariantViolation`] instead of being returned.
//!
//! Non-pendant 2-ears are always handled first. Then the first non-pendant
//! 3-ear `x-v-y-z` is handled by one of these cases:
//!
//! | label      | situation                                                   |
//! |------------|-------------------------------------------------------------|
//! | `C1`       | a nontrivial ear joins `v` and `y`                          |
//! | `C2`       | ears join `x,y` and `v,z`, at least one nontrivial          |
//! | `C3a`      | the first ear leaving `y` ends at `w != x`                  |
//! | `C3b-*`    | it ends at `x`, and `v` has a trivial ear to an earlier `u` |
//! | `C3c-*`    | otherwise: reroute through a neighbor `u` of `v`            |

use std::collections::HashMap;

use crate::ear::{join_paths, Ear, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::{edge_key, Graph, Vertex};
use crate::trace::Trace;
use crate::transform::{rewrite, Slot, Stepper};

/// Lemma-style merge of a nontrivial ear `P` with the first nontrivial ear `Q`
/// that has an endpoint `w` inside `P`.
///
/// `w` must be the only endpoint of `Q` inside `P`, and must be next to an
/// endpoint `y` of `P`. The result drops `P` and `Q`, puts the merged ear
/// (all edges of both except `wy`) in `Q`'s position and appends the trivial
/// ear `wy`. For a 2-ear both endpoints qualify as `y`; the one that keeps
/// the merged ear open is taken.
pub fn lemma1_rotate(d: &EarDecomposition, p: usize, q: usize) -> Result<EarDecomposition> {
    for i in [p, q] {
        if i >= d.len() {
            return Err(Error::EarIndexOutOfRange {
                index: i,
                len: d.len(),
            });
        }
        if d.ears[i].is_trivial() {
            return Err(Error::TrivialEar(i));
        }
    }
    let (pe, qe) = (&d.ears[p], &d.ears[q]);
    if p == q || pe.is_closed() {
        return Err(Error::precondition("P must be an open ear distinct from Q"));
    }
    let first = (0..d.len()).find(|&j| {
        j != p && !d.ears[j].is_trivial() && {
            let (a, b) = d.ears[j].endpoints();
            pe.is_internal(a) || pe.is_internal(b)
        }
    });
    if first != Some(q) {
        return Err(Error::precondition(
            "Q is not the first nontrivial ear with an endpoint inside P",
        ));
    }
    let (a, b) = qe.endpoints();
    let w = match (pe.is_internal(a), pe.is_internal(b)) {
        (true, false) => a,
        (false, true) => b,
        _ => return Err(Error::precondition("exactly one endpoint of Q must lie inside P")),
    };
    let far = qe.other_endpoint(w).expect("w is an endpoint of Q");
    let pos = pe.position(w).expect("w lies on P");
    let next_to_first = pos == 1;
    let next_to_last = pos + 2 == pe.vertices().len();
    let y = match (next_to_first, next_to_last) {
        (true, true) if pe.first() == far => pe.first(),
        (_, true) => pe.last(),
        (true, false) => pe.first(),
        (false, false) => {
            return Err(Error::precondition(
                "the endpoint of Q inside P is not next to an endpoint of P",
            ))
        }
    };
    let x = pe.other_endpoint(y).expect("y is an endpoint of P");
    let from_x = pe.from_endpoint(x).expect("x is an endpoint of P");
    let to_w = &from_x.vertices()[..from_x.vertices().len() - 1];
    let merged = join_paths(&[to_w, qe.from_endpoint(w).expect("w ends Q").vertices()]);
    rewrite(d, &[p, q], vec![(Slot::At(q), merged)])
}

/// Replaces a triangle first ear by a longer closed ear.
///
/// With `P2` running from `u` to `v`, the new closed ear is the 2-edge
/// `u,v`-path of the triangle followed by `P2`; the edge `uv` becomes a
/// trivial ear. Decompositions whose first ear is already long are returned
/// unchanged.
pub fn fix_closed_short_first_ear(g: &Graph, d: &EarDecomposition) -> Result<EarDecomposition> {
    check_open_valid(g, d)?;
    if g.n() < 4 {
        return Err(Error::precondition("at least 4 vertices are required"));
    }
    let d = d.clone().canonical();
    if d.ears[0].edge_count() != 3 {
        return Ok(d);
    }
    let p2 = &d.ears[1];
    if p2.is_trivial() {
        return Err(Error::invariant("a graph on 4+ vertices needs a second nontrivial ear"));
    }
    let (u, v) = p2.endpoints();
    let tri = d.ears[0].vertices();
    let x = tri[..3]
        .iter()
        .copied()
        .find(|&w| w != u && w != v)
        .expect("triangle has a third vertex");
    let mut cycle = vec![u, x];
    cycle.extend_from_slice(p2.from_endpoint(v).expect("v ends P2").vertices());
    cycle.pop();
    let start = cycle.iter().position(|&w| w == d.root).ok_or_else(|| {
        Error::invariant("the root is not on the merged first ear")
    })?;
    cycle.rotate_left(start);
    cycle.push(d.root);
    let out = rewrite(&d, &[0, 1], vec![(Slot::At(0), Ear::new(cycle))])?;
    out.ensure_valid(g, "closed short first ear")?;
    Ok(out)
}

/// Splits `s` at its internal vertex `t` into `(s1, s0)`.
///
/// `s1` runs from an endpoint `c` to `t` and `s0` from `t` to the other
/// endpoint `d`. For odd `s` the even half is `s1`; for even `s`, `c` is the
/// first vertex of `s`.
pub fn split_ear_at(s: &Ear, t: Vertex) -> Result<(Ear, Ear)> {
    let verts = s.vertices();
    let pos = match s.position(t) {
        Some(pos) if s.is_internal(t) => pos,
        _ => return Err(Error::precondition(format!("{t} is not internal to ear {s}"))),
    };
    let head = Ear::new(verts[..=pos].to_vec());
    let tail = Ear::new(verts[pos..].to_vec());
    if s.is_even() || head.is_even() {
        Ok((head, tail))
    } else {
        Ok((tail.reversed(), head.reversed()))
    }
}

/// Working state of the case-3c walk.
///
/// `f_old[i]` is an ear split at the cursor; `f_new1[i]` is its half from an
/// endpoint `c` to the cursor and `f_new0[i]` the half from the cursor on.
/// `x` marks the vertices present before the 3-ear being processed.
#[derive(Clone, Debug, Default)]
pub struct RerouteContext {
    pub f_old: Vec<usize>,
    pub f_new1: Vec<Ear>,
    pub f_new0: Vec<Ear>,
    pub t: Vertex,
    pub x: Vec<bool>,
}

impl RerouteContext {
    fn push(&mut self, old: usize, s: &Ear, s1: Ear, s0: Ear) -> Result<()> {
        if s0.is_even() && !s.is_even() || !s1.is_even() && (s0.is_even() || !s.is_even()) {
            return Err(Error::invariant(format!("split of ear {s} broke the parity rule")));
        }
        self.f_old.push(old);
        self.f_new1.push(s1);
        self.f_new0.push(s0);
        Ok(())
    }

    fn clear(&mut self) {
        self.f_old.clear();
        self.f_new1.clear();
        self.f_new0.clear();
    }
}

/// Makes every short ear pendant. See the module docs.
pub fn pendantize(g: &Graph, d: &EarDecomposition) -> Result<EarDecomposition> {
    pendantize_traced(g, d, false, &mut Trace::default())
}

/// [`pendantize`] with a step trace. With `certified`, the input is known to
/// have the minimum number of even ears and any step lowering it is an error.
pub fn pendantize_traced(
    g: &Graph,
    d: &EarDecomposition,
    certified: bool,
    trace: &mut Trace,
) -> Result<EarDecomposition> {
    check_instance(g)?;
    check_open_valid(g, d)?;
    let mut st = Stepper::new(g, certified, "pendantize", trace);
    let mut d = d.clone().canonical();
    if d.ears[0].edge_count() == 3 {
        let next = fix_closed_short_first_ear(g, &d)?;
        d = st.commit(&d, next, "closed-short-first", vec![0, 1])?;
    }
    loop {
        st.tick()?;
        let flags = d.pendant_flags();
        let first_non_pendant = |len: usize| {
            (0..d.len()).find(|&i| flags[i] == Some(false) && d.ears[i].edge_count() == len)
        };
        let (next, case, touched) = if let Some(p) = first_non_pendant(2) {
            let q = first_ear_ending_inside(&d, p)?;
            (lemma1_rotate(&d, p, q)?, "T2".to_string(), vec![p, q])
        } else if let Some(p) = first_non_pendant(3) {
            three_ear_step(g, &d, p)?
        } else {
            return Ok(d);
        };
        d = st.commit(&d, next, &case, touched)?;
    }
}

/// Case-3c rewrite for the non-pendant 3-ear `p` through the neighbor `u` of
/// its inner vertex `v`.
///
/// The orientation `x-v-y-z` of `p` is the one where the first nontrivial
/// ear with an endpoint inside `p` ends at `y`. Cases 1, 2, 3a and 3b must
/// not apply, and `u` must be a neighbor of `v` outside `X ∪ {y}`, where `X`
/// is the vertex set present before `p`.
pub fn case3c_reroute(
    g: &Graph,
    d: &EarDecomposition,
    p: usize,
    u: Vertex,
) -> Result<EarDecomposition> {
    check_open_valid(g, d)?;
    if p >= d.len() || d.ears[p].edge_count() != 3 || d.classify_pendant(p)? {
        return Err(Error::precondition("P must be a non-pendant 3-ear"));
    }
    let frame = match classify_three_ear(g, d, p)? {
        ThreeEarCase::Reroute(frame) => frame,
        _ => return Err(Error::precondition("an earlier case applies to P")),
    };
    if !g.has_edge(u, frame.v) || frame.present[u] || u == frame.y {
        return Err(Error::precondition("u must be a neighbor of v outside X and y"));
    }
    let (out, _, _) = reroute(g, d, &frame, u)?;
    out.ensure_valid(g, "case 3c")?;
    Ok(out)
}

fn check_instance(g: &Graph) -> Result<()> {
    if !g.is_two_vertex_connected() {
        return Err(Error::NotTwoConnected);
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) < 3) {
        return Err(Error::MinDegreeTooLow {
            vertex: v,
            degree: g.degree(v),
            required: 3,
        });
    }
    Ok(())
}

fn check_open_valid(g: &Graph, d: &EarDecomposition) -> Result<()> {
    if let Some(v) = d.validate(g).first() {
        return Err(Error::precondition(format!("invalid decomposition: {v}")));
    }
    if !d.is_open() {
        return Err(Error::precondition("decomposition is not open"));
    }
    Ok(())
}

/// The first nontrivial ear other than `p` with an endpoint inside `p`.
fn first_ear_ending_inside(d: &EarDecomposition, p: usize) -> Result<usize> {
    let pe = &d.ears[p];
    (0..d.len())
        .find(|&j| {
            j != p && !d.ears[j].is_trivial() && {
                let (a, b) = d.ears[j].endpoints();
                pe.is_internal(a) || pe.is_internal(b)
            }
        })
        .ok_or_else(|| Error::invariant(format!("ear {} is not pendant but nothing ends in it", p + 1)))
}

fn ears_by_edge(d: &EarDecomposition) -> HashMap<(Vertex, Vertex), usize> {
    let mut map = HashMap::new();
    for (i, ear) in d.ears.iter().enumerate() {
        for (u, v) in ear.edges() {
            map.insert(edge_key(u, v), i);
        }
    }
    map
}

fn joins(ear: &Ear, a: Vertex, b: Vertex) -> bool {
    ear.endpoints() == (a, b) || ear.endpoints() == (b, a)
}

/// A non-pendant 3-ear `x-v-y-z` oriented so that `q`, the first nontrivial
/// ear with an endpoint inside it, ends at `y` and at `x`.
struct Frame {
    p: usize,
    q: usize,
    x: Vertex,
    v: Vertex,
    y: Vertex,
    z: Vertex,
    present: Vec<bool>,
}

enum ThreeEarCase {
    Done(EarDecomposition, String, Vec<usize>),
    Reroute(Frame),
}

fn three_ear_step(
    g: &Graph,
    d: &EarDecomposition,
    p: usize,
) -> Result<(EarDecomposition, String, Vec<usize>)> {
    match classify_three_ear(g, d, p)? {
        ThreeEarCase::Done(out, case, touched) => Ok((out, case, touched)),
        ThreeEarCase::Reroute(frame) => {
            let u = g
                .neighbors(frame.v)
                .iter()
                .copied()
                .find(|&u| !frame.present[u] && u != frame.y)
                .ok_or_else(|| Error::invariant("inner vertex of a 3-ear has no third neighbor"))?;
            reroute(g, d, &frame, u)
        }
    }
}

/// Runs cases 1, 2, 3a and 3b; returns the frame for case 3c otherwise.
fn classify_three_ear(g: &Graph, d: &EarDecomposition, p: usize) -> Result<ThreeEarCase> {
    let pv = d.ears[p].vertices();
    let (x, v, y, z) = (pv[0], pv[1], pv[2], pv[3]);
    let others = || (0..d.len()).filter(move |&j| j != p);

    // Case 1: a nontrivial ear from v to y.
    if let Some(q) = others().find(|&j| !d.ears[j].is_trivial() && joins(&d.ears[j], v, y)) {
        let inner = d.ears[q].from_endpoint(v).expect("v ends Q");
        let merged = join_paths(&[&[x, v], inner.vertices(), &[y, z]]);
        let out = rewrite(d, &[p, q], vec![(Slot::At(p), merged)])?;
        return Ok(ThreeEarCase::Done(out, "C1".into(), vec![p, q]));
    }

    // Case 2: ears x..y and v..z, not both trivial.
    let q1s: Vec<usize> = others().filter(|&j| joins(&d.ears[j], x, y)).collect();
    let q2s: Vec<usize> = others().filter(|&j| joins(&d.ears[j], v, z)).collect();
    let pair = q1s.iter().find_map(|&a| {
        q2s.iter()
            .find(|&&b| !d.ears[a].is_trivial() || !d.ears[b].is_trivial())
            .map(|&b| (a, b))
    });
    if let Some((q1, q2)) = pair {
        let first = d.ears[q1].from_endpoint(x).expect("x ends Q1");
        let second = d.ears[q2].from_endpoint(v).expect("v ends Q2");
        let merged = join_paths(&[first.vertices(), &[y, v], second.vertices()]);
        let out = rewrite(d, &[p, q1, q2], vec![(Slot::At(p), merged)])?;
        return Ok(ThreeEarCase::Done(out, "C2".into(), vec![p, q1, q2]));
    }

    // Case 3: orient P so the first ear ending inside it ends at y.
    let q = first_ear_ending_inside(d, p)?;
    let qe = &d.ears[q];
    let (x, v, y, z) = if qe.has_endpoint(y) {
        (x, v, y, z)
    } else {
        (z, y, v, x)
    };
    let w = qe.other_endpoint(y).expect("Q ends at y");
    if w != x {
        let out = lemma1_rotate(d, p, q)?;
        return Ok(ThreeEarCase::Done(out, "C3a".into(), vec![p, q]));
    }

    let present = d.present_before(p, g.n());
    let by_edge = ears_by_edge(d);
    let trivial_back = g.neighbors(v).iter().copied().find(|&u| {
        present[u] && u != x && d.ears[by_edge[&edge_key(u, v)]].is_trivial()
    });
    if let Some(u) = trivial_back {
        if u == z {
            return Err(Error::invariant("trivial ear vz should have been handled by case 2"));
        }
        let (out, case, touched) = case3b(g, d, p, q, [x, v, y, z], u)?;
        return Ok(ThreeEarCase::Done(out, case.into(), touched));
    }
    Ok(ThreeEarCase::Reroute(Frame {
        p,
        q,
        x,
        v,
        y,
        z,
        present,
    }))
}

/// Case 3b: `Q` runs from `x` to `y` and `uv` is a trivial ear with `u`
/// present before `P`. `R` is the ear holding `u` internally.
fn case3b(
    g: &Graph,
    d: &EarDecomposition,
    p: usize,
    q: usize,
    [x, v, y, z]: [Vertex; 4],
    u: Vertex,
) -> Result<(EarDecomposition, &'static str, Vec<usize>)> {
    let owner = d.internal_owner(g.n());
    let q_from_x = d.ears[q].from_endpoint(x).expect("x ends Q");
    let r = owner[u].filter(|&r| !d.ears[r].is_long());
    let Some(r) = r else {
        // Long R, or u is the root.
        let merged = join_paths(&[q_from_x.vertices(), &[y, v, u]]);
        let out = rewrite(d, &[p, q], vec![(Slot::At(p), merged)])?;
        return Ok((out, "C3b-long", vec![p, q]));
    };
    let re = &d.ears[r];
    if re.edge_count() == 2 {
        let a = [re.first(), re.last()]
            .into_iter()
            .filter(|&a| a != z)
            .min()
            .expect("an open ear has an endpoint other than z");
        let merged = Ear::new(vec![a, u, v, y, z]);
        let out = rewrite(d, &[p, r], vec![(Slot::At(p), merged)])?;
        return Ok((out, "C3b-i", vec![p, r]));
    }
    let rv = re.vertices();
    let (a, i) = if rv[1] == u { (rv[3], rv[2]) } else { (rv[0], rv[1]) };
    if a != x {
        let merged = join_paths(&[&[a, i, u, v, y], q_from_x.reversed().vertices()]);
        let out = rewrite(d, &[r, p, q], vec![(Slot::At(p), merged)])?;
        Ok((out, "C3b-ii", vec![r, p, q]))
    } else {
        let merged = Ear::new(vec![x, i, u, v, y, z]);
        let out = rewrite(d, &[r, p], vec![(Slot::At(p), merged)])?;
        Ok((out, "C3b-ii", vec![r, p]))
    }
}

/// Case 3c: walk from `v` through `u` until the cursor reaches a vertex
/// present before `P`, or an inner vertex of `P`.
fn reroute(
    g: &Graph,
    d: &EarDecomposition,
    f: &Frame,
    u: Vertex,
) -> Result<(EarDecomposition, String, Vec<usize>)> {
    let &Frame {
        p,
        q,
        x,
        v,
        y,
        z,
        ref present,
    } = f;
    let owner = d.internal_owner(g.n());
    let by_edge = ears_by_edge(d);
    let mut r = by_edge[&edge_key(u, v)];
    let mut r_path = d.ears[r]
        .from_endpoint(v)
        .ok_or_else(|| Error::invariant("the ear through uv does not end at v"))?;
    let mut ctx = RerouteContext {
        t: r_path.last(),
        x: present.clone(),
        ..RerouteContext::default()
    };
    let mut restarts = 0;
    loop {
        while !(ctx.x[ctx.t] || ctx.t == v || ctx.t == y) {
            let s = owner[ctx.t]
                .ok_or_else(|| Error::invariant(format!("vertex {} has no ear", ctx.t)))?;
            let (s1, s0) = split_ear_at(&d.ears[s], ctx.t)?;
            let c = s1.first();
            ctx.push(s, &d.ears[s], s1, s0)?;
            ctx.t = c;
        }
        if ctx.t != v {
            break;
        }
        // The walk came back to v: restart from the last ear it split.
        let s = *ctx
            .f_old
            .last()
            .ok_or_else(|| Error::invariant("walk returned to v without splitting an ear"))?;
        if s >= r {
            return Err(Error::invariant("re-chosen ear is not earlier than the previous one"));
        }
        r = s;
        restarts += 1;
        r_path = d.ears[s].from_endpoint(v).expect("the split ear ends at v");
        ctx.clear();
        ctx.t = r_path.last();
    }

    let mut walk = r_path.vertices().to_vec();
    for s1 in &ctx.f_new1 {
        let back = s1.reversed();
        walk.extend_from_slice(&back.vertices()[1..]);
    }
    let (merged, end, extra) = if ctx.t == y {
        (join_paths(&[&[x, v], &walk, &[y, z]]), "iii", None)
    } else if ctx.t == z {
        let q_from_x = d.ears[q].from_endpoint(x).expect("x ends Q");
        (join_paths(&[q_from_x.vertices(), &[y, v], &walk]), "iv", Some(q))
    } else {
        (join_paths(&[&[z, y, v], &walk]), "i", None)
    };
    // A walk that came back to v and restarted is labelled e.g. "C3c-ii+i".
    let case = if restarts > 0 {
        format!("C3c-ii+{end}")
    } else {
        format!("C3c-{end}")
    };
    let mut deleted = vec![p, r];
    deleted.extend(extra);
    deleted.extend(&ctx.f_old);
    let mut placed = vec![(Slot::At(p), merged)];
    placed.extend(ctx.f_old.iter().zip(ctx.f_new0).map(|(&s, s0)| (Slot::At(s), s0)));
    let out = rewrite(d, &deleted, placed)?;
    Ok((out, case, deleted))
}
