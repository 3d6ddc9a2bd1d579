//! Moves a (tangency), b (kink) and c (triangle) on the combinatorial map.

use serde::{Deserialize, Serialize};

use doodle_diagram::{CurveMap, Dart, End, Faces, PlanarDiagram, Side};

use crate::error::MoveError;
use crate::local::{carry_outer, join_window, offset_branch, Draft, Joined};

/// One local move. Face-valued fields name a face by its key (smallest
/// boundary dart) in the diagram the event is applied to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MoveEvent {
    /// Add a small loop to `arc`, bulging into the face on `side`.
    KinkCreate { arc: usize, side: Side },
    /// Shrink away a bounded monogon.
    KinkRemove { face: Dart },
    /// Push the two darts of a common face across each other. `variant`
    /// indexes the valid lens placements (see [`tangency_variants`]).
    TangencyCreate {
        first: Dart,
        second: Dart,
        variant: usize,
    },
    /// Pull apart the two strands of a bounded digon.
    TangencyRemove { face: Dart },
    /// Pass a branch over the crossing opposite to it in a bounded triangle.
    Triangle { face: Dart },
}

impl MoveEvent {
    /// Change in the number of crossings.
    pub fn crossing_delta(&self) -> i64 {
        match self {
            MoveEvent::KinkCreate { .. } => 1,
            MoveEvent::KinkRemove { .. } => -1,
            MoveEvent::TangencyCreate { .. } => 2,
            MoveEvent::TangencyRemove { .. } => -2,
            MoveEvent::Triangle { .. } => 0,
        }
    }

    /// Is this move allowed between doodles (a and b only)?
    pub fn is_doodle_move(&self) -> bool {
        !matches!(self, MoveEvent::Triangle { .. })
    }
}

/// Two darts on a common face; the face they share is `face`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CreationSite {
    pub face: Dart,
    pub first: Dart,
    pub second: Dart,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSites {
    /// Bounded monogons (b-removal).
    pub monogons: Vec<Dart>,
    /// Bounded digons between two different strands (a-removal).
    pub digons: Vec<Dart>,
    /// All faces with three sides and three distinct corners, outer included.
    pub triangle_faces: Vec<Dart>,
    /// Bounded triangles where the c-move applies.
    pub c_sites: Vec<Dart>,
    /// Dart pairs (first ≤ second) on a common face.
    pub creation: Vec<CreationSite>,
}

pub fn find_move_sites(d: &PlanarDiagram) -> MoveSites {
    map_sites(d.map())
}

pub(crate) fn map_sites(m: &CurveMap) -> MoveSites {
    sites_with(m, true)
}

/// Like [`map_sites`]; c-sites (the costly part) only when `triangles`.
pub(crate) fn sites_with(m: &CurveMap, triangles: bool) -> MoveSites {
    let faces = m.faces();
    let mut s = MoveSites::default();
    for f in 0..faces.len() {
        let key = faces.key(f);
        let b = faces.boundary(f);
        let bounded = f != faces.outer();
        match b.len() {
            1 if bounded && monogon_ok(m, b) => s.monogons.push(key),
            2 if bounded && digon_visits(m, b).is_some() => {
                if tangency_remove(m, key).is_ok() {
                    s.digons.push(key)
                }
            }
            3 if triangle_corners(m, b).is_some() => {
                s.triangle_faces.push(key);
                if triangles && bounded && collapse_map(m, key).is_ok() {
                    s.c_sites.push(key);
                }
            }
            _ => {}
        }
        let mut ds: Vec<Dart> = b.to_vec();
        ds.sort();
        for i in 0..ds.len() {
            for j in i..ds.len() {
                s.creation.push(CreationSite {
                    face: key,
                    first: ds[i],
                    second: ds[j],
                });
            }
        }
    }
    s
}

fn monogon_ok(m: &CurveMap, b: &[Dart]) -> bool {
    let n = m.n_visits();
    n > 0
        && m.vertex_of(b[0].arc) == m.vertex_of((b[0].arc + 1) % n)
        && m.multiplicity(m.vertex_of(b[0].arc)) == 2
}

fn digon_visits(m: &CurveMap, b: &[Dart]) -> Option<[usize; 4]> {
    let n = m.n_visits();
    let (a1, a2) = (b[0].arc, b[1].arc);
    let vs = [a1, (a1 + 1) % n, a2, (a2 + 1) % n];
    let mut u = vs.to_vec();
    u.sort();
    u.dedup();
    if u.len() != 4 {
        return None;
    }
    let x = m.vertex_of(vs[0]);
    let y = m.vertex_of(vs[1]);
    if x == y || m.multiplicity(x) != 2 || m.multiplicity(y) != 2 {
        return None;
    }
    Some(vs)
}

fn triangle_corners(m: &CurveMap, b: &[Dart]) -> Option<[usize; 3]> {
    let n = m.n_visits();
    let mut c = Vec::new();
    for d in b {
        for i in [d.arc, (d.arc + 1) % n] {
            let v = m.vertex_of(i);
            if !c.contains(&v) {
                c.push(v);
            }
        }
        if m.vertex_of(d.arc) == m.vertex_of((d.arc + 1) % n) {
            return None;
        }
    }
    if c.len() != 3 || c.iter().any(|&v| m.multiplicity(v) != 2) {
        return None;
    }
    Some([c[0], c[1], c[2]])
}

fn face_with_key(m: &CurveMap, faces: &Faces, key: Dart) -> Result<usize, MoveError> {
    if key.arc >= m.n_arcs() {
        return Err(MoveError::SiteVanished(format!("no arc {}", key.arc)));
    }
    let f = faces.face_of(key);
    if faces.key(f) != key {
        return Err(MoveError::SiteVanished(format!("{key} is not a face key")));
    }
    Ok(f)
}

fn stale(what: &str, key: Dart) -> MoveError {
    MoveError::SiteVanished(format!("face {key} is not a {what}"))
}

pub(crate) fn kink_remove(m: &CurveMap, key: Dart) -> Result<CurveMap, MoveError> {
    let faces = m.faces();
    let f = face_with_key(m, &faces, key)?;
    let b = faces.boundary(f);
    if b.len() != 1 || f == faces.outer() || !monogon_ok(m, b) {
        return Err(stale("bounded monogon", key));
    }
    let n = m.n_visits();
    let dead = [m.tag(b[0].arc), m.tag((b[0].arc + 1) % n)];
    let mut dr = Draft::of(m);
    dr.remove(&dead);
    Ok(dr.finish(carry_outer(m, |t| !dead.contains(&t), &[b[0].arc]))?)
}

pub(crate) fn tangency_remove(m: &CurveMap, key: Dart) -> Result<CurveMap, MoveError> {
    let faces = m.faces();
    let f = face_with_key(m, &faces, key)?;
    let b = faces.boundary(f);
    if b.len() != 2 || f == faces.outer() {
        return Err(stale("bounded digon", key));
    }
    let vs = digon_visits(m, b).ok_or_else(|| stale("digon between two strands", key))?;
    let dead: Vec<u64> = vs.iter().map(|&i| m.tag(i)).collect();
    let mut dr = Draft::of(m);
    dr.remove(&dead);
    Ok(dr.finish(carry_outer(
        m,
        |t| !dead.contains(&t),
        &[b[0].arc, b[1].arc],
    ))?)
}

/// Rotation of a double point through visits tagged `p` and `q`; the two
/// chiralities.
fn cross_rot(p: u64, q: u64, c: i8) -> Vec<(u64, End)> {
    if c > 0 {
        vec![(p, End::Out), (q, End::In), (p, End::In), (q, End::Out)]
    } else {
        vec![(p, End::Out), (q, End::Out), (p, End::In), (q, End::In)]
    }
}

fn dart_after(m: &CurveMap, tag: u64, side: Side) -> Dart {
    Dart::new(m.visit_with_tag(tag).unwrap(), side)
}

pub(crate) fn kink_create(m: &CurveMap, arc: usize, side: Side) -> Result<CurveMap, MoveError> {
    if arc >= m.n_arcs() {
        return Err(MoveError::SiteVanished(format!("no arc {arc}")));
    }
    let base = Draft::of(m);
    let (t1, t2) = (base.fresh(), base.fresh() + 1);
    let anchor = if m.is_circle() {
        None
    } else {
        Some(m.tag(arc))
    };
    let outer = if m.is_circle() {
        (Some(t2), m.outer().side)
    } else {
        carry_outer(m, |_| true, &[])
    };
    for c in [1i8, -1] {
        let mut dr = base.clone();
        let x = dr.new_vertex();
        dr.insert_after(anchor, &[(t1, x), (t2, x)]);
        dr.rot[x] = cross_rot(t1, t2, c);
        let Ok(r) = dr.finish(outer) else { continue };
        // the face walk on `side` must run around the outside of the loop
        let lp = r.visit_with_tag(t1).unwrap();
        let piece = match (side, anchor) {
            (Side::Left, Some(t)) => dart_after(&r, t, side),
            _ => dart_after(&r, t2, side),
        };
        if r.next_dart(piece).arc == lp {
            return Ok(r);
        }
    }
    Err(MoveError::SiteVanished(format!(
        "no kink fits on {arc}{}",
        if side == Side::Left { 'L' } else { 'R' }
    )))
}

/// All valid lens placements for pushing `first` and `second` (darts of one
/// face) across each other, in a fixed order.
pub fn tangency_variants(d: &PlanarDiagram, first: Dart, second: Dart) -> Vec<PlanarDiagram> {
    tangency_candidates(d.map(), first, second)
        .into_iter()
        .filter_map(|m| PlanarDiagram::from_map(m).ok())
        .collect()
}

pub(crate) fn tangency_candidates(m: &CurveMap, d1: Dart, d2: Dart) -> Vec<CurveMap> {
    let na = m.n_arcs();
    if d1.arc >= na || d2.arc >= na {
        return Vec::new();
    }
    let faces = m.faces();
    let f = faces.face_of(d1);
    if faces.face_of(d2) != f {
        return Vec::new();
    }
    let (d1, d2) = if d2 < d1 { (d2, d1) } else { (d1, d2) };
    let target = m.canonical_key();
    let base = Draft::of(m);
    let t0 = base.fresh();
    let (p1, p2, q1, q2) = (t0, t0 + 1, t0 + 2, t0 + 3);
    let anchor = |a: usize| if m.is_circle() { None } else { Some(m.tag(a)) };
    let mut out: Vec<CurveMap> = Vec::new();
    // orders of the four new visits: on one arc p1 p2, on the other q1 q2 or q2 q1
    let layouts: Vec<(Vec<u64>, Vec<u64>)> =
        vec![(vec![p1, p2], vec![q1, q2]), (vec![p1, p2], vec![q2, q1])];
    for (la, lb) in layouts {
        for c1 in [1i8, -1] {
            for c2 in [1i8, -1] {
                let mut dr = base.clone();
                let x1 = dr.new_vertex();
                let x2 = dr.new_vertex();
                let vx = |t: u64| if t == p1 || t == q1 { x1 } else { x2 };
                let qa = lb[0];
                if d1.arc == d2.arc {
                    let all: Vec<(u64, usize)> =
                        la.iter().chain(&lb).map(|&t| (t, vx(t))).collect();
                    dr.insert_after(anchor(d1.arc), &all);
                } else {
                    dr.insert_after(
                        anchor(d1.arc),
                        &la.iter().map(|&t| (t, vx(t))).collect::<Vec<_>>(),
                    );
                    dr.insert_after(
                        anchor(d2.arc),
                        &lb.iter().map(|&t| (t, vx(t))).collect::<Vec<_>>(),
                    );
                }
                dr.rot[x1] = cross_rot(p1, q1, c1);
                dr.rot[x2] = cross_rot(p2, q2, c2);
                let o = if m.is_circle() {
                    (Some(*lb.last().unwrap()), m.outer().side)
                } else {
                    carry_outer(m, |_| true, &[])
                };
                let Ok(r0) = dr.finish(o) else { continue };
                let cands: Vec<CurveMap> = if f == faces.outer() {
                    // the face is cut in two; either part may be the unbounded one
                    let rf = r0.faces();
                    (0..rf.len())
                        .filter_map(|g| r0.with_outer(rf.key(g)).ok())
                        .collect()
                } else {
                    vec![r0]
                };
                for r in cands {
                    let rf = r.faces();
                    let pm = Dart::new(r.visit_with_tag(la[0]).unwrap(), d1.side.flip());
                    let qm = Dart::new(r.visit_with_tag(qa).unwrap(), d2.side.flip());
                    let lens = rf.face_of(pm);
                    if rf.boundary(lens).len() != 2 || rf.face_of(qm) != lens || lens == rf.outer()
                    {
                        continue;
                    }
                    match tangency_remove(&r, rf.key(lens)) {
                        Ok(back) if back.canonical_key() == target => {}
                        _ => continue,
                    }
                    if !out.iter().any(|o| o.canonical_key() == r.canonical_key()) {
                        out.push(r);
                    }
                }
            }
        }
    }
    out
}

/// The triple point obtained by shrinking a bounded triangle, and how to
/// undo it.
pub(crate) fn collapse_map(m: &CurveMap, key: Dart) -> Result<(Joined, u64), MoveError> {
    let faces = m.faces();
    let f = face_with_key(m, &faces, key)?;
    let b = faces.boundary(f);
    if b.len() != 3 || f == faces.outer() {
        return Err(stale("bounded triangle", key));
    }
    let corners =
        triangle_corners(m, b).ok_or_else(|| stale("triangle with three corners", key))?;
    let n = m.n_visits();
    let a = b[0].arc;
    let (u, w) = (m.vertex_of(a), m.vertex_of((a + 1) % n));
    let v = *corners.iter().find(|&&c| c != u && c != w).unwrap();
    let tag = m.tag(a);
    join_window(m, v, &[a, (a + 1) % n], tag)
        .into_iter()
        .next()
        .map(|j| (j, tag))
        .ok_or_else(|| stale("triangle of three distinct strands", key))
}

pub(crate) fn triangle_move(m: &CurveMap, key: Dart) -> Result<CurveMap, MoveError> {
    let (j, tag) = collapse_map(m, key)?;
    Ok(offset_branch(&j.map, tag, -j.undo)?.map)
}

pub(crate) fn apply_map(m: &CurveMap, e: &MoveEvent) -> Result<CurveMap, MoveError> {
    match *e {
        MoveEvent::KinkCreate { arc, side } => kink_create(m, arc, side),
        MoveEvent::KinkRemove { face } => kink_remove(m, face),
        MoveEvent::TangencyCreate {
            first,
            second,
            variant,
        } => tangency_candidates(m, first, second)
            .into_iter()
            .nth(variant)
            .ok_or_else(|| {
                MoveError::SiteVanished(format!(
                    "no tangency variant {variant} for {first}/{second}"
                ))
            }),
        MoveEvent::TangencyRemove { face } => tangency_remove(m, face),
        MoveEvent::Triangle { face } => triangle_move(m, face),
    }
}

pub fn apply_move(d: &PlanarDiagram, e: &MoveEvent) -> Result<PlanarDiagram, MoveError> {
    Ok(PlanarDiagram::from_map(apply_map(d.map(), e)?)?)
}

/// An event that takes `apply_move(d, e)` back to `d` (up to relabelling).
pub fn inverse_event(d: &PlanarDiagram, e: &MoveEvent) -> Result<MoveEvent, MoveError> {
    let after = apply_map(d.map(), e)?;
    let target = d.canonical_key();
    let hit = |x: &MoveEvent| {
        apply_map(&after, x)
            .map(|r| r.canonical_key() == target)
            .unwrap_or(false)
    };
    let sites = map_sites(&after);
    let found = match e {
        MoveEvent::KinkCreate { .. } => sites
            .monogons
            .iter()
            .map(|&face| MoveEvent::KinkRemove { face })
            .find(hit),
        MoveEvent::TangencyCreate { .. } => sites
            .digons
            .iter()
            .map(|&face| MoveEvent::TangencyRemove { face })
            .find(hit),
        MoveEvent::Triangle { .. } => sites
            .c_sites
            .iter()
            .map(|&face| MoveEvent::Triangle { face })
            .find(hit),
        MoveEvent::KinkRemove { .. } => (0..after.n_arcs())
            .flat_map(|arc| {
                [Side::Left, Side::Right].map(|side| MoveEvent::KinkCreate { arc, side })
            })
            .find(hit),
        MoveEvent::TangencyRemove { .. } => sites.creation.iter().find_map(|s| {
            let k = tangency_candidates(&after, s.first, s.second).len();
            (0..k)
                .map(|variant| MoveEvent::TangencyCreate {
                    first: s.first,
                    second: s.second,
                    variant,
                })
                .find(hit)
        }),
    };
    found.ok_or_else(|| MoveError::SiteVanished("no inverse event found".into()))
}
