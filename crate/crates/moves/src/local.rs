//! Tag-addressed surgery: the primitives every move is built from.
//!
//! A [`Draft`] is a map written in terms of visit tags instead of visit
//! positions, so visits can be inserted and deleted freely and the result
//! re-validated as a [`CurveMap`] at the end.

use std::collections::{HashMap, HashSet};

use doodle_diagram::{CurveMap, DiagramError, End, HalfEdge, Side};

use crate::error::MoveError;

#[derive(Clone, Debug)]
pub(crate) struct Draft {
    /// (tag, vertex) in curve order.
    pub seq: Vec<(u64, usize)>,
    /// ccw (tag, end) lists; empty lists are dropped by `finish`.
    pub rot: Vec<Vec<(u64, End)>>,
}

/// Outer face of a draft: the arc leaving the visit with this tag, on this
/// side. `None` only for the circle.
pub(crate) type OuterRef = (Option<u64>, Side);

impl Draft {
    pub fn of(m: &CurveMap) -> Self {
        let seq = (0..m.n_visits())
            .map(|i| (m.tag(i), m.vertex_of(i)))
            .collect();
        let rot = m
            .rotations()
            .iter()
            .map(|r| r.iter().map(|h| (m.tag(h.visit), h.end)).collect())
            .collect();
        Draft { seq, rot }
    }

    pub fn fresh(&self) -> u64 {
        self.seq.iter().map(|s| s.0 + 1).max().unwrap_or(0)
    }

    pub fn new_vertex(&mut self) -> usize {
        self.rot.push(Vec::new());
        self.rot.len() - 1
    }

    pub fn index_of(&self, tag: u64) -> Option<usize> {
        self.seq.iter().position(|s| s.0 == tag)
    }

    pub fn remove(&mut self, tags: &[u64]) {
        let kill: HashSet<u64> = tags.iter().copied().collect();
        self.seq.retain(|s| !kill.contains(&s.0));
        for r in &mut self.rot {
            r.retain(|h| !kill.contains(&h.0));
        }
    }

    /// Inserts visits right after the visit with tag `after` (`None`: at the
    /// end of the sequence).
    pub fn insert_after(&mut self, after: Option<u64>, items: &[(u64, usize)]) {
        let at = match after {
            Some(t) => self.index_of(t).expect("anchor tag present") + 1,
            None => self.seq.len(),
        };
        self.seq.splice(at..at, items.iter().copied());
    }

    pub fn finish(&self, outer: OuterRef) -> Result<CurveMap, DiagramError> {
        if self.seq.is_empty() {
            return Ok(CurveMap::circle(outer.1 == Side::Right));
        }
        let mut renum = vec![usize::MAX; self.rot.len()];
        let mut rot_out = Vec::new();
        for (v, r) in self.rot.iter().enumerate() {
            if !r.is_empty() {
                renum[v] = rot_out.len();
                rot_out.push(Vec::new());
            }
        }
        let pos: HashMap<u64, usize> = self.seq.iter().enumerate().map(|(i, s)| (s.0, i)).collect();
        let visits: Vec<usize> = self.seq.iter().map(|s| renum[s.1]).collect();
        if visits.contains(&usize::MAX) {
            return Err(DiagramError::Invalid(
                "visit to a vertex without half-edges".into(),
            ));
        }
        for (v, r) in self.rot.iter().enumerate() {
            if renum[v] == usize::MAX {
                continue;
            }
            let mut hs = Vec::with_capacity(r.len());
            for &(t, end) in r {
                let visit = *pos.get(&t).ok_or_else(|| {
                    DiagramError::Invalid(format!("rotation lists missing tag {t}"))
                })?;
                hs.push(HalfEdge { visit, end });
            }
            rot_out[renum[v]] = hs;
        }
        let tags = self.seq.iter().map(|s| s.0).collect();
        let arc = match outer.0 {
            Some(t) => *pos
                .get(&t)
                .ok_or_else(|| DiagramError::Invalid("outer tag vanished".into()))?,
            None => 0,
        };
        CurveMap::with_tags(
            visits,
            rot_out,
            tags,
            doodle_diagram::Dart::new(arc, outer.1),
        )
    }
}

/// Carries the outer face of `m` to a draft that keeps only some of its
/// visits. `dead_arcs` are arcs that disappear with the removed visits; any
/// other arc becomes part of the new arc of the nearest surviving visit
/// behind it, with its sides unchanged.
pub(crate) fn carry_outer(
    m: &CurveMap,
    keep: impl Fn(u64) -> bool,
    dead_arcs: &[usize],
) -> OuterRef {
    let o = m.outer();
    let n = m.n_visits();
    if n == 0 {
        return (None, o.side);
    }
    let faces = m.faces();
    let live = faces
        .boundary(faces.outer())
        .iter()
        .copied()
        .find(|d| !dead_arcs.contains(&d.arc));
    let d = live.unwrap_or(o);
    for k in 0..n {
        let i = (d.arc + n - k) % n;
        if keep(m.tag(i)) {
            return (Some(m.tag(i)), d.side);
        }
    }
    (None, d.side)
}

/// Result of pushing one branch off a multiple point.
#[derive(Clone, Debug)]
pub struct Offset {
    pub map: CurveMap,
    /// For each branch that passed the old vertex: its tag and the tags of the
    /// visits that replace it, in curve order.
    pub passes: Vec<(u64, Vec<u64>)>,
}

/// Pushes the branch through visit `tag` slightly off its vertex, to the left
/// (`delta = +1`) or right (`delta = -1`) of its direction of travel. The
/// branch then crosses every other branch of the vertex at a new double
/// point; the other branches keep meeting at the old vertex if at least two
/// of them remain.
pub fn offset_branch(m: &CurveMap, tag: u64, delta: i8) -> Result<Offset, MoveError> {
    let s = m
        .visit_with_tag(tag)
        .ok_or_else(|| MoveError::SiteVanished(format!("no visit tagged {tag}")))?;
    let v = m.vertex_of(s);
    let mu = m.multiplicity(v);
    let two = 2 * mu;
    let ps = m.pos(HalfEdge::out(s));
    // (visit, k, crossing comes after the old vertex along t)
    let mut others: Vec<(usize, usize, bool)> = m
        .visits_at(v)
        .into_iter()
        .filter(|&t| t != s)
        .map(|t| {
            let d = (m.pos(HalfEdge::out(t)) + two - ps) % two;
            (t, d % mu, (d < mu) == (delta > 0))
        })
        .collect();
    // along the pushed branch the crossings come in decreasing k to the
    // left, increasing k to the right
    others.sort_by_key(|o| o.1);
    if delta > 0 {
        others.reverse();
    }
    let mut dr = Draft::of(m);
    let mut next = dr.fresh();
    // the first new visit of the pushed branch keeps its tag
    let mut s_new: Vec<u64> = others
        .iter()
        .map(|_| {
            next += 1;
            next - 1
        })
        .collect();
    if let Some(f) = s_new.first_mut() {
        *f = tag;
    }
    let t_new: Vec<u64> = others
        .iter()
        .map(|_| {
            next += 1;
            next - 1
        })
        .collect();
    let mut new_vertex = Vec::new();
    for (k, &(t, _, _)) in others.iter().enumerate() {
        let x = dr.new_vertex();
        new_vertex.push(x);
        let pt = m.pos(HalfEdge::out(t));
        let mut hs = [
            (ps, (s_new[k], End::Out)),
            ((ps + mu) % two, (s_new[k], End::In)),
            (pt, (t_new[k], End::Out)),
            ((pt + mu) % two, (t_new[k], End::In)),
        ];
        hs.sort_by_key(|h| h.0);
        dr.rot[x] = hs.iter().map(|h| h.1).collect();
    }
    let origin_stays = mu >= 3;
    let mut replacement: HashMap<u64, Vec<(u64, usize)>> = HashMap::new();
    replacement.insert(
        tag,
        s_new
            .iter()
            .copied()
            .zip(new_vertex.iter().copied())
            .collect(),
    );
    for (k, &(t, _, after)) in others.iter().enumerate() {
        let mut r = Vec::new();
        let own = (m.tag(t), v);
        let cross = (t_new[k], new_vertex[k]);
        if after {
            if origin_stays {
                r.push(own);
            }
            r.push(cross);
        } else {
            r.push(cross);
            if origin_stays {
                r.push(own);
            }
        }
        replacement.insert(m.tag(t), r);
    }
    let mut seq = Vec::with_capacity(m.n_visits() + 2 * others.len());
    for &(t, x) in &dr.seq {
        match replacement.get(&t) {
            Some(r) => seq.extend(r.iter().copied()),
            None => seq.push((t, x)),
        }
    }
    dr.seq = seq;
    if origin_stays {
        dr.rot[v].retain(|h| h.0 != tag);
    } else {
        dr.rot[v].clear();
    }
    let o = m.outer();
    let start = m.tag(o.arc);
    let new_start = match replacement.get(&start) {
        Some(r) => r.last().unwrap().0,
        None => start,
    };
    let map = dr.finish((Some(new_start), o.side))?;
    let passes = std::iter::once(tag)
        .chain(others.iter().map(|o| m.tag(o.0)))
        .map(|t| (t, replacement[&t].iter().map(|x| x.0).collect()))
        .collect();
    Ok(Offset { map, passes })
}

/// A joined map together with the offset direction that undoes the join.
#[derive(Clone, Debug)]
pub(crate) struct Joined {
    pub map: CurveMap,
    pub undo: i8,
}

/// Moves the consecutive visits `window` (all at double points next to the
/// vertex `v`) into `v` as a single new branch tagged `new_tag`. Returns
/// every embedding whose offset reproduces `m` exactly.
pub(crate) fn join_window(m: &CurveMap, v: usize, window: &[usize], new_tag: u64) -> Vec<Joined> {
    let n = m.n_visits();
    let mu = m.multiplicity(v);
    if window.len() != mu || n == 0 {
        return Vec::new();
    }
    let at_v: HashSet<usize> = m.visits_at(v).into_iter().collect();
    let in_window: HashSet<usize> = window.iter().copied().collect();
    let mut corners = HashSet::new();
    let mut choices: Vec<Vec<(usize, usize)>> = Vec::new(); // (other visit, visit at v)
    for &w in window {
        let x = m.vertex_of(w);
        if x == v || m.multiplicity(x) != 2 || !corners.insert(x) {
            return Vec::new();
        }
        let vs = m.visits_at(x);
        let o = if vs[0] == w { vs[1] } else { vs[0] };
        if in_window.contains(&o) {
            return Vec::new();
        }
        let c: Vec<(usize, usize)> = [(o + n - 1) % n, (o + 1) % n]
            .into_iter()
            .filter(|t| at_v.contains(t))
            .map(|t| (o, t))
            .collect();
        if c.is_empty() {
            return Vec::new();
        }
        choices.push(c);
    }
    // every visit at v must be met exactly once
    let mut assignments = Vec::new();
    assign(&choices, 0, &mut Vec::new(), &mut assignments);
    let mut out = Vec::new();
    let target = m.canonical_key();
    for asg in assignments {
        let used: HashSet<usize> = asg.iter().map(|a| a.1).collect();
        if used.len() != mu {
            continue;
        }
        let dead: Vec<u64> = window
            .iter()
            .chain(asg.iter().map(|a| &a.0))
            .map(|&i| m.tag(i))
            .collect();
        let mut dr = Draft::of(m);
        let first = m.tag(window[0]);
        let mut seq = Vec::with_capacity(n);
        for &(t, x) in &dr.seq {
            if t == first {
                seq.push((new_tag, v));
            }
            if !dead.contains(&t) {
                seq.push((t, x));
            }
        }
        dr.seq = seq;
        for r in &mut dr.rot {
            r.retain(|h| !dead.contains(&h.0));
        }
        let base = dr.rot[v].clone();
        for g in 0..mu {
            for (a, b) in [(End::Out, End::In), (End::In, End::Out)] {
                let mut r = base[..g].to_vec();
                r.push((new_tag, a));
                r.extend_from_slice(&base[g..g + mu]);
                r.push((new_tag, b));
                r.extend_from_slice(&base[g + mu..]);
                dr.rot[v] = r;
                let Ok(probe) = dr.finish((Some(dr.seq[0].0), Side::Left)) else {
                    continue;
                };
                let faces = probe.faces();
                for f in 0..faces.len() {
                    let Ok(cand) = probe.with_outer(faces.key(f)) else {
                        continue;
                    };
                    for undo in [1i8, -1] {
                        if let Ok(off) = offset_branch(&cand, new_tag, undo) {
                            if off.map.canonical_key() == target {
                                out.push(Joined {
                                    map: cand.clone(),
                                    undo,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn assign(
    choices: &[Vec<(usize, usize)>],
    k: usize,
    cur: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if k == choices.len() {
        out.push(cur.clone());
        return;
    }
    for &c in &choices[k] {
        if cur.iter().any(|x| x.1 == c.1) {
            continue;
        }
        cur.push(c);
        assign(choices, k + 1, cur, out);
        cur.pop();
    }
}

/// Joins the branch through visit `branch` into the multiple point that
/// contains visit `vertex` (both given by tag), trying every window of
/// consecutive visits around the branch.
pub fn join_branch_map(
    m: &CurveMap,
    vertex: u64,
    branch: u64,
) -> Result<(CurveMap, i8), MoveError> {
    let not_adj = || MoveError::BranchNotAdjacent { vertex, branch };
    let vi = m.visit_with_tag(vertex).ok_or_else(not_adj)?;
    let bi = m.visit_with_tag(branch).ok_or_else(not_adj)?;
    let v = m.vertex_of(vi);
    let mu = m.multiplicity(v);
    let n = m.n_visits();
    if m.vertex_of(bi) == v || n < mu {
        return Err(not_adj());
    }
    for back in 0..mu {
        let window: Vec<usize> = (0..mu).map(|k| (bi + n - back + k) % n).collect();
        if let Some(j) = join_window(m, v, &window, branch).into_iter().next() {
            return Ok((j.map, j.undo));
        }
    }
    Err(not_adj())
}
