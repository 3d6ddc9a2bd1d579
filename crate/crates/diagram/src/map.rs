use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::DiagramError;

/// Which end of a visit a half-edge is: `In` carries the arc arriving at the
/// visit, `Out` the arc leaving it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    In,
    Out,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub visit: usize,
    pub end: End,
}

impl HalfEdge {
    pub fn inc(visit: usize) -> Self {
        HalfEdge {
            visit,
            end: End::In,
        }
    }

    pub fn out(visit: usize) -> Self {
        HalfEdge {
            visit,
            end: End::Out,
        }
    }

    pub fn other_end(self) -> Self {
        HalfEdge {
            visit: self.visit,
            end: match self.end {
                End::In => End::Out,
                End::Out => End::In,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// One side of one arc. Arc `i` runs from visit `i` to visit `i + 1`.
/// Written `3L` / `3R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub arc: usize,
    pub side: Side,
}

impl Dart {
    pub fn new(arc: usize, side: Side) -> Self {
        Dart { arc, side }
    }

    pub fn left(arc: usize) -> Self {
        Dart {
            arc,
            side: Side::Left,
        }
    }

    pub fn right(arc: usize) -> Self {
        Dart {
            arc,
            side: Side::Right,
        }
    }

    pub fn key(self) -> usize {
        2 * self.arc + (self.side == Side::Right) as usize
    }

    pub fn flip(self) -> Dart {
        Dart {
            arc: self.arc,
            side: self.side.flip(),
        }
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Left => 'L',
            Side::Right => 'R',
        };
        write!(f, "{}{}", self.arc, s)
    }
}

impl Serialize for Dart {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dart {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Dart {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || DiagramError::Parse(format!("bad face key `{s}` (expected e.g. 3L or 0R)"));
        let (num, side) = match s.chars().last() {
            Some('L') | Some('l') => (&s[..s.len() - 1], Side::Left),
            Some('R') | Some('r') => (&s[..s.len() - 1], Side::Right),
            _ => return Err(bad()),
        };
        let arc = num.parse().map_err(|_| bad())?;
        Ok(Dart { arc, side })
    }
}

/// A closed oriented curve drawn on the plane, recorded as a rotation system.
///
/// The curve passes through its vertices in the order given by `visits`; a
/// vertex visited `m` times has `2m` half-edges in counter-clockwise order, and
/// the two half-edges of each visit sit opposite each other (the branch goes
/// straight through). `tags` are opaque per-visit labels that survive local
/// surgery, so callers can follow visits through a sequence of moves.
///
/// With no visits the map is the embedded circle with a single loop arc 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveMap {
    visits: Vec<usize>,
    rot: Vec<Vec<HalfEdge>>,
    tags: Vec<u64>,
    outer: Dart,
    // position of In / Out of each visit inside its rotation list
    loc: Vec<[usize; 2]>,
}

impl CurveMap {
    /// The embedded circle. `ccw` selects the counter-clockwise orientation,
    /// whose interior is on the left.
    pub fn circle(ccw: bool) -> Self {
        CurveMap {
            visits: Vec::new(),
            rot: Vec::new(),
            tags: Vec::new(),
            outer: Dart::new(0, if ccw { Side::Right } else { Side::Left }),
            loc: Vec::new(),
        }
    }

    pub fn new(
        visits: Vec<usize>,
        rot: Vec<Vec<HalfEdge>>,
        outer: Dart,
    ) -> Result<Self, DiagramError> {
        let tags = (0..visits.len() as u64).collect();
        Self::with_tags(visits, rot, tags, outer)
    }

    pub fn with_tags(
        visits: Vec<usize>,
        rot: Vec<Vec<HalfEdge>>,
        tags: Vec<u64>,
        outer: Dart,
    ) -> Result<Self, DiagramError> {
        let m = Self::build(visits, rot, tags, outer)?;
        m.check_sphere()?;
        Ok(m)
    }

    /// Structural checks only (no sphere condition); used when the caller wants
    /// to probe candidate maps cheaply.
    fn build(
        visits: Vec<usize>,
        rot: Vec<Vec<HalfEdge>>,
        tags: Vec<u64>,
        outer: Dart,
    ) -> Result<Self, DiagramError> {
        let n = visits.len();
        let bad = |s: String| Err(DiagramError::Invalid(s));
        if tags.len() != n {
            return bad(format!("{} tags for {} visits", tags.len(), n));
        }
        if n == 0 {
            if !rot.is_empty() {
                return bad("vertices without visits".into());
            }
            if outer.arc != 0 {
                return bad(format!("outer dart {outer} on a circle"));
            }
            return Ok(CurveMap {
                visits,
                rot,
                tags,
                outer,
                loc: Vec::new(),
            });
        }
        let mut count = vec![0usize; rot.len()];
        for &v in &visits {
            if v >= rot.len() {
                return bad(format!("visit to unknown vertex {v}"));
            }
            count[v] += 1;
        }
        let mut loc = vec![[usize::MAX; 2]; n];
        for (v, hs) in rot.iter().enumerate() {
            if count[v] < 2 {
                return bad(format!("vertex {v} is visited {} time(s)", count[v]));
            }
            if hs.len() != 2 * count[v] {
                return bad(format!(
                    "vertex {v} has {} half-edges for {} visits",
                    hs.len(),
                    count[v]
                ));
            }
            for (k, h) in hs.iter().enumerate() {
                if h.visit >= n || visits[h.visit] != v {
                    return bad(format!("vertex {v} lists a half-edge of visit {}", h.visit));
                }
                let slot = &mut loc[h.visit][(h.end == End::Out) as usize];
                if *slot != usize::MAX {
                    return bad(format!("half-edge of visit {} listed twice", h.visit));
                }
                *slot = k;
            }
        }
        for (i, l) in loc.iter().enumerate() {
            let m = count[visits[i]];
            if l[0] == usize::MAX || l[1] == usize::MAX {
                return bad(format!("visit {i} is missing a half-edge"));
            }
            if l[0].abs_diff(l[1]) != m {
                return bad(format!(
                    "branch of visit {i} does not pass straight through"
                ));
            }
        }
        if outer.arc >= n {
            return bad(format!("outer dart {outer} out of range"));
        }
        Ok(CurveMap {
            visits,
            rot,
            tags,
            outer,
            loc,
        })
    }

    fn check_sphere(&self) -> Result<(), DiagramError> {
        let n = self.visits.len();
        if n == 0 {
            return Ok(());
        }
        let f = self.faces().len();
        let chi = self.rot.len() as i64 - n as i64 + f as i64;
        if chi != 2 {
            return Err(DiagramError::UnrealizableCode(format!(
                "V − E + F = {} − {} + {} = {chi}, not 2",
                self.rot.len(),
                n,
                f
            )));
        }
        Ok(())
    }

    pub fn is_circle(&self) -> bool {
        self.visits.is_empty()
    }

    pub fn n_visits(&self) -> usize {
        self.visits.len()
    }

    /// Number of arcs (equals the number of visits, except 1 for the circle).
    pub fn n_arcs(&self) -> usize {
        self.visits.len().max(1)
    }

    pub fn n_vertices(&self) -> usize {
        self.rot.len()
    }

    pub fn visits(&self) -> &[usize] {
        &self.visits
    }

    pub fn vertex_of(&self, visit: usize) -> usize {
        self.visits[visit]
    }

    pub fn rotation(&self, v: usize) -> &[HalfEdge] {
        &self.rot[v]
    }

    pub fn rotations(&self) -> &[Vec<HalfEdge>] {
        &self.rot
    }

    pub fn multiplicity(&self, v: usize) -> usize {
        self.rot[v].len() / 2
    }

    pub fn tags(&self) -> &[u64] {
        &self.tags
    }

    pub fn tag(&self, visit: usize) -> u64 {
        self.tags[visit]
    }

    pub fn visit_with_tag(&self, tag: u64) -> Option<usize> {
        self.tags.iter().position(|&t| t == tag)
    }

    pub fn retagged(&self, tags: Vec<u64>) -> Self {
        assert_eq!(tags.len(), self.visits.len());
        CurveMap {
            tags,
            ..self.clone()
        }
    }

    pub fn outer(&self) -> Dart {
        self.outer
    }

    /// The same curve with a different dart declared to lie on the unbounded face.
    pub fn with_outer(&self, outer: Dart) -> Result<Self, DiagramError> {
        if outer.arc >= self.n_arcs() {
            return Err(DiagramError::Invalid(format!(
                "outer dart {outer} out of range"
            )));
        }
        Ok(CurveMap {
            outer,
            ..self.clone()
        })
    }

    /// Visits passing through vertex `v`, in curve order.
    pub fn visits_at(&self, v: usize) -> Vec<usize> {
        (0..self.visits.len())
            .filter(|&i| self.visits[i] == v)
            .collect()
    }

    /// Position of a half-edge in the counter-clockwise list of its vertex.
    pub fn pos(&self, h: HalfEdge) -> usize {
        self.loc[h.visit][(h.end == End::Out) as usize]
    }

    pub fn ccw(&self, h: HalfEdge) -> HalfEdge {
        let r = &self.rot[self.visits[h.visit]];
        r[(self.pos(h) + 1) % r.len()]
    }

    pub fn cw(&self, h: HalfEdge) -> HalfEdge {
        let r = &self.rot[self.visits[h.visit]];
        r[(self.pos(h) + r.len() - 1) % r.len()]
    }

    /// Half-edge reached when walking along the dart in its direction of travel
    /// (forward along the arc for the left side, backward for the right).
    pub fn arrival(&self, d: Dart) -> HalfEdge {
        let n = self.visits.len();
        match d.side {
            Side::Left => HalfEdge::inc((d.arc + 1) % n),
            Side::Right => HalfEdge::out(d.arc),
        }
    }

    /// Dart whose walk starts by leaving along `h` with the face on the left.
    pub fn departure(&self, h: HalfEdge) -> Dart {
        let n = self.visits.len();
        match h.end {
            End::Out => Dart::left(h.visit),
            End::In => Dart::right((h.visit + n - 1) % n),
        }
    }

    pub fn next_dart(&self, d: Dart) -> Dart {
        if self.visits.is_empty() {
            return d;
        }
        self.departure(self.cw(self.arrival(d)))
    }

    /// Face boundaries, traced keeping the face on the left of the walk.
    pub fn faces(&self) -> Faces {
        let darts = 2 * self.n_arcs();
        let mut of = vec![usize::MAX; darts];
        let mut cycles = Vec::new();
        for k in 0..darts {
            if of[k] != usize::MAX {
                continue;
            }
            let start = Dart::new(k / 2, if k % 2 == 0 { Side::Left } else { Side::Right });
            let id = cycles.len();
            let mut cyc = Vec::new();
            let mut d = start;
            loop {
                of[d.key()] = id;
                cyc.push(d);
                d = self.next_dart(d);
                if d == start {
                    break;
                }
            }
            cycles.push(cyc);
        }
        let outer = of[self.outer.key()];
        Faces { cycles, of, outer }
    }

    /// Winding numbers of all faces, normalised to 0 on the outer face.
    pub fn indices(&self) -> Result<FaceIndexMap, DiagramError> {
        let faces = self.faces();
        self.indices_with(&faces)
            .map(|index| FaceIndexMap { faces, index })
    }

    fn indices_with(&self, faces: &Faces) -> Result<Vec<i64>, DiagramError> {
        let nf = faces.len();
        // left = right + 1 across every arc
        let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); nf];
        for a in 0..self.n_arcs() {
            let l = faces.face_of(Dart::left(a));
            let r = faces.face_of(Dart::right(a));
            adj[r].push((l, 1));
            adj[l].push((r, -1));
        }
        let mut index = vec![None; nf];
        index[faces.outer] = Some(0i64);
        let mut queue = VecDeque::from([faces.outer]);
        while let Some(f) = queue.pop_front() {
            let i = index[f].unwrap();
            for &(g, d) in &adj[f] {
                match index[g] {
                    None => {
                        index[g] = Some(i + d);
                        queue.push_back(g);
                    }
                    Some(j) if j != i + d => {
                        return Err(DiagramError::UnrealizableCode(
                            "face indices are inconsistent".into(),
                        ))
                    }
                    _ => {}
                }
            }
        }
        index
            .into_iter()
            .map(|x| x.ok_or_else(|| DiagramError::Invalid("disconnected face graph".into())))
            .collect()
    }

    /// Faces in the corners of vertex `v`; entry `k` is the corner between
    /// rotation positions `k` and `k + 1`.
    pub fn corner_faces(&self, faces: &Faces, v: usize) -> Vec<usize> {
        self.rot[v]
            .iter()
            .map(|&h| faces.face_of(self.departure(h)))
            .collect()
    }

    /// Mirror image: every rotation reversed.
    pub fn mirror(&self) -> Self {
        let rot: Vec<Vec<HalfEdge>> = self
            .rot
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        let m = Self::build(
            self.visits.clone(),
            rot,
            self.tags.clone(),
            self.outer.flip(),
        );
        m.expect("mirror of a valid map")
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        let n = self.visits.len();
        if n == 0 {
            return CurveMap {
                outer: self.outer.flip(),
                ..self.clone()
            };
        }
        let new_of = |i: usize| n - 1 - i;
        let visits = (0..n).map(|j| self.visits[n - 1 - j]).collect();
        let tags = (0..n).map(|j| self.tags[n - 1 - j]).collect();
        let rot = self
            .rot
            .iter()
            .map(|r| {
                r.iter()
                    .map(|h| match h.end {
                        End::Out => HalfEdge::inc(new_of(h.visit)),
                        End::In => HalfEdge::out(new_of(h.visit)),
                    })
                    .collect()
            })
            .collect();
        let outer = Dart::new((2 * n - 2 - self.outer.arc) % n, self.outer.side.flip());
        Self::build(visits, rot, tags, outer).expect("reversal of a valid map")
    }

    /// Relabels visits so that visit `s` becomes visit 0.
    pub fn shifted(&self, s: usize) -> Self {
        let n = self.visits.len();
        if n == 0 {
            return self.clone();
        }
        let s = s % n;
        let new_of = |i: usize| (i + n - s) % n;
        let visits = (0..n).map(|j| self.visits[(j + s) % n]).collect();
        let tags = (0..n).map(|j| self.tags[(j + s) % n]).collect();
        let rot = self
            .rot
            .iter()
            .map(|r| {
                r.iter()
                    .map(|h| HalfEdge {
                        visit: new_of(h.visit),
                        end: h.end,
                    })
                    .collect()
            })
            .collect();
        let outer = Dart::new(new_of(self.outer.arc), self.outer.side);
        Self::build(visits, rot, tags, outer).expect("shift of a valid map")
    }

    /// A key that agrees exactly for maps equal up to moving the start point,
    /// relabelling vertices and choosing a different dart of the outer face.
    /// Tags are ignored.
    pub fn canonical_key(&self) -> Vec<u32> {
        let n = self.visits.len();
        if n == 0 {
            return vec![0, (self.outer.side == Side::Right) as u32];
        }
        let faces = self.faces();
        let outer_cycle = &faces.cycles[faces.outer];
        let mut best: Option<Vec<u32>> = None;
        for s in 0..n {
            let key = self.encode_from(s, outer_cycle);
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        }
        best.unwrap()
    }

    fn encode_from(&self, s: usize, outer_cycle: &[Dart]) -> Vec<u32> {
        let n = self.visits.len();
        let sh = |i: usize| (i + n - s) % n;
        let mut label = vec![u32::MAX; self.rot.len()];
        let mut order = Vec::with_capacity(self.rot.len());
        let mut out = Vec::with_capacity(1 + 3 * n + 1);
        out.push(n as u32);
        for j in 0..n {
            let v = self.visits[(j + s) % n];
            if label[v] == u32::MAX {
                label[v] = order.len() as u32;
                order.push((v, (j + s) % n));
            }
            out.push(label[v]);
        }
        for &(v, first) in &order {
            let r = &self.rot[v];
            let start = self.pos(HalfEdge::out(first));
            for k in 0..r.len() {
                let h = r[(start + k) % r.len()];
                out.push(2 * sh(h.visit) as u32 + (h.end == End::Out) as u32);
            }
        }
        let od = outer_cycle
            .iter()
            .map(|d| 2 * sh(d.arc) as u32 + (d.side == Side::Right) as u32)
            .min()
            .unwrap();
        out.push(od);
        out
    }
}

/// Face boundaries of a map plus the dart → face lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faces {
    cycles: Vec<Vec<Dart>>,
    of: Vec<usize>,
    outer: usize,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.of[d.key()]
    }

    /// Boundary darts of face `f` in walking order.
    pub fn boundary(&self, f: usize) -> &[Dart] {
        &self.cycles[f]
    }

    pub fn outer(&self) -> usize {
        self.outer
    }

    /// Smallest dart on the face's boundary, used as its external name.
    pub fn key(&self, f: usize) -> Dart {
        *self.cycles[f].iter().min().unwrap()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Dart]> {
        self.cycles.iter().map(Vec::as_slice)
    }
}

/// Index (winding number) of every face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceIndexMap {
    pub faces: Faces,
    pub index: Vec<i64>,
}

impl FaceIndexMap {
    pub fn of_dart(&self, d: Dart) -> i64 {
        self.index[self.faces.face_of(d)]
    }

    pub fn outer(&self) -> usize {
        self.faces.outer
    }
}
