//! Closed polylines with exact rational vertices.
//!
//! Points that occur more than once among the vertices are kept as designated
//! multiple points: every pass of the curve through such a point becomes one
//! branch of a single vertex of the map. All other intersections must be
//! transverse crossings of segment interiors.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::diagram::PlanarDiagram;
use crate::error::DiagramError;
use crate::map::{CurveMap, Dart, HalfEdge};

pub type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        Point {
            x: Q::from_integer(x.into()),
            y: Q::from_integer(y.into()),
        }
    }

    /// Parses decimal strings such as `"-12.75"` or `"3e-2"` exactly.
    pub fn parse(x: &str, y: &str) -> Result<Self, DiagramError> {
        let p = |s: &str| {
            parse_decimal(s).ok_or_else(|| DiagramError::Parse(format!("bad coordinate `{s}`")))
        };
        Ok(Point { x: p(x)?, y: p(y)? })
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point {
            x: &self.x - &o.x,
            y: &self.y - &o.y,
        }
    }

    pub fn add(&self, o: &Point) -> Point {
        Point {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
        }
    }

    pub fn scale(&self, t: &Q) -> Point {
        Point {
            x: &self.x * t,
            y: &self.y * t,
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
        )
    }
}

pub fn cross(a: &Point, b: &Point) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &Point, b: &Point) -> Q {
    &a.x * &b.x + &a.y * &b.y
}

/// Sign of the turn a → b → c.
fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    let v = cross(&b.sub(a), &c.sub(a));
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact counter-clockwise angular comparison of two nonzero directions,
/// starting from the positive x axis.
pub fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    let half = |p: &Point| {
        if p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Exact value of a decimal literal (`-1.5`, `2e3`, `7`) or a fraction `p/q`.
pub fn parse_decimal(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        return (!q.is_zero()).then(|| Q::new(p, q));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let e = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut v = if e >= 0 {
        Q::from_integer(digits * ten.pow(e as u32))
    } else {
        Q::new(digits, ten.pow((-e) as u32))
    };
    if neg {
        v = -v;
    }
    Some(v)
}

/// Reads a JSON array of `[x, y]` pairs; coordinates may be numbers or strings.
pub fn parse_polyline_json(text: &str) -> Result<Vec<Point>, DiagramError> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| DiagramError::Parse(e.to_string()))?;
    let arr = v
        .as_array()
        .or_else(|| v.get("points").and_then(|p| p.as_array()))
        .ok_or_else(|| DiagramError::Parse("expected an array of [x, y] pairs".into()))?;
    let coord = |c: &serde_json::Value| -> Result<String, DiagramError> {
        match c {
            serde_json::Value::Number(n) => Ok(n.to_string()),
            serde_json::Value::String(s) => Ok(s.clone()),
            _ => Err(DiagramError::Parse(format!("bad coordinate {c}"))),
        }
    };
    arr.iter()
        .map(|p| match p.as_array().map(Vec::as_slice) {
            Some([x, y]) => Point::parse(&coord(x)?, &coord(y)?),
            _ => Err(DiagramError::Parse(format!("bad point {p}"))),
        })
        .collect()
}

/// Where a visit of the ingested map came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VisitOrigin {
    /// Pass through a repeated polyline vertex (its index).
    Vertex(usize),
    /// Transverse crossing inside segment `segment` at parameter `t`.
    Crossing { segment: usize, t: Q },
}

/// Result of polyline ingestion, with enough geometry kept for checks.
#[derive(Clone, Debug)]
pub struct Ingested {
    pub map: CurveMap,
    /// Location of every map vertex.
    pub vertex_points: Vec<Point>,
    pub origins: Vec<VisitOrigin>,
    /// One interior point of each arc and the arc's direction there.
    pub arc_samples: Vec<(Point, Point)>,
}

fn nongeneric(s: impl Into<String>) -> DiagramError {
    DiagramError::NonGeneric(s.into())
}

fn dist2_f64(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)
}

fn seg_dist_f64(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let l = dx * dx + dy * dy;
    let t = if l == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / l).clamp(0.0, 1.0)
    };
    dist2_f64(p, (a.0 + t * dx, a.1 + t * dy)).sqrt()
}

struct Crossing {
    point: Point,
    segs: [(usize, Q); 2],
}

pub fn ingest_polyline(points: &[Point], eps: f64) -> Result<Ingested, DiagramError> {
    let mut pts = points.to_vec();
    if pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    let n = pts.len();
    if n < 3 {
        return Err(nongeneric("a closed polyline needs at least 3 points"));
    }
    for k in 0..n {
        if pts[k] == pts[(k + 1) % n] {
            return Err(nongeneric(format!(
                "consecutive points {k} and {} coincide",
                (k + 1) % n
            )));
        }
    }
    let seg = |k: usize| (&pts[k], &pts[(k + 1) % n]);
    // designated points
    let mut groups: HashMap<&Point, Vec<usize>> = HashMap::new();
    for (k, p) in pts.iter().enumerate() {
        groups.entry(p).or_default().push(k);
    }
    // back-tracking spikes
    for k in 0..n {
        let (a, b, c) = (&pts[(k + n - 1) % n], &pts[k], &pts[(k + 1) % n]);
        if orient(a, b, c) == 0 && dot(&b.sub(a), &c.sub(b)).is_negative() {
            return Err(nongeneric(format!("the curve doubles back at point {k}")));
        }
    }
    let mut crossings: Vec<Crossing> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            let (o1, o2, o3, o4) = (
                orient(a, b, c),
                orient(a, b, d),
                orient(c, d, a),
                orient(c, d, b),
            );
            if o1 * o2 < 0 && o3 * o4 < 0 {
                let r = b.sub(a);
                let s = d.sub(c);
                let den = cross(&r, &s);
                let t = cross(&c.sub(a), &s) / &den;
                let u = cross(&c.sub(a), &r) / &den;
                crossings.push(Crossing {
                    point: a.add(&r.scale(&t)),
                    segs: [(i, t), (j, u)],
                });
                continue;
            }
            // any contact must be a shared endpoint
            let on = |p: &Point, a: &Point, b: &Point| {
                orient(a, b, p) == 0 && !dot(&p.sub(a), &p.sub(b)).is_positive()
            };
            let contacts: Vec<&Point> = [(c, a, b), (d, a, b), (a, c, d), (b, c, d)]
                .into_iter()
                .filter(|(p, x, y)| on(p, x, y))
                .map(|(p, _, _)| p)
                .collect();
            if o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0 {
                let mut uniq = contacts.clone();
                uniq.sort_by(|p, q| (&p.x, &p.y).cmp(&(&q.x, &q.y)));
                uniq.dedup();
                if uniq.len() > 1 {
                    return Err(nongeneric(format!("segments {i} and {j} overlap")));
                }
            }
            for p in contacts {
                let shared = (p == a || p == b) && (p == c || p == d);
                if !shared {
                    return Err(nongeneric(format!(
                        "segments {i} and {j} touch without crossing"
                    )));
                }
            }
        }
    }
    // exact coincidences of crossing points
    {
        let mut seen: HashMap<&Point, usize> = HashMap::new();
        for (k, x) in crossings.iter().enumerate() {
            if seen.insert(&x.point, k).is_some() {
                return Err(nongeneric("three segments pass through one point"));
            }
        }
    }
    if eps > 0.0 {
        let vf: Vec<(f64, f64)> = pts.iter().map(Point::to_f64).collect();
        for x in &crossings {
            let xf = x.point.to_f64();
            if vf.iter().any(|&v| dist2_f64(v, xf).sqrt() < eps) {
                return Err(nongeneric(
                    "an intersection lies within eps of a polyline vertex",
                ));
            }
            for k in 0..n {
                if k == x.segs[0].0 || k == x.segs[1].0 {
                    continue;
                }
                if seg_dist_f64(xf, vf[k], vf[(k + 1) % n]) < eps {
                    return Err(nongeneric("three segments meet within eps"));
                }
            }
        }
    }

    let mut per_seg: Vec<Vec<(Q, usize)>> = vec![Vec::new(); n];
    for (c, x) in crossings.iter().enumerate() {
        for (s, t) in &x.segs {
            per_seg[*s].push((t.clone(), c));
        }
    }
    for l in &mut per_seg {
        l.sort_by(|a, b| a.0.cmp(&b.0));
    }
    let mut vertex_of_group: HashMap<&Point, usize> = HashMap::new();
    let mut vertex_points: Vec<Point> = Vec::new();
    let mut cross_vertex = vec![usize::MAX; crossings.len()];
    let mut visits: Vec<usize> = Vec::new();
    let mut origins: Vec<VisitOrigin> = Vec::new();
    let mut dirs: Vec<(Point, Point)> = Vec::new(); // (d_in, d_out)
    let mut positions: Vec<(usize, Q)> = Vec::new();
    let zero = Q::zero();
    for k in 0..n {
        let dir = pts[(k + 1) % n].sub(&pts[k]);
        if groups[&pts[k]].len() > 1 {
            let next = vertex_points.len();
            let v = *vertex_of_group.entry(&pts[k]).or_insert(next);
            if v == next {
                vertex_points.push(pts[k].clone());
            }
            visits.push(v);
            origins.push(VisitOrigin::Vertex(k));
            dirs.push((pts[k].sub(&pts[(k + n - 1) % n]), dir.clone()));
            positions.push((k, zero.clone()));
        }
        for (t, c) in &per_seg[k] {
            if cross_vertex[*c] == usize::MAX {
                cross_vertex[*c] = vertex_points.len();
                vertex_points.push(crossings[*c].point.clone());
            }
            visits.push(cross_vertex[*c]);
            origins.push(VisitOrigin::Crossing {
                segment: k,
                t: t.clone(),
            });
            dirs.push((dir.clone(), dir.clone()));
            positions.push((k, t.clone()));
        }
    }
    let nv = visits.len();

    // rotations by exact angle
    let mut by_vertex: Vec<Vec<(Point, HalfEdge)>> = vec![Vec::new(); vertex_points.len()];
    for i in 0..nv {
        let (din, dout) = &dirs[i];
        by_vertex[visits[i]].push((Point::new(-din.x.clone(), -din.y.clone()), HalfEdge::inc(i)));
        by_vertex[visits[i]].push((dout.clone(), HalfEdge::out(i)));
    }
    let mut rot = Vec::with_capacity(by_vertex.len());
    for list in &mut by_vertex {
        list.sort_by(|a, b| angle_cmp(&a.0, &b.0));
        for w in 0..list.len() {
            let (p, q) = (&list[w].0, &list[(w + 1) % list.len()].0);
            if list.len() > 1 && angle_cmp(p, q) == Ordering::Equal {
                return Err(nongeneric("two branches are tangent at a multiple point"));
            }
        }
        rot.push(list.iter().map(|x| x.1).collect::<Vec<_>>());
    }

    // outer face by a horizontal ray from the far left
    let mut ys: Vec<&Q> = pts
        .iter()
        .map(|p| &p.y)
        .chain(crossings.iter().map(|c| &c.point.y))
        .collect();
    ys.sort();
    ys.dedup();
    if ys.len() < 2 {
        return Err(nongeneric("the curve is flat"));
    }
    let y0 = (ys[0] + ys[1]) / Q::from_integer(2.into());
    let mut best: Option<(Q, usize, Q, bool)> = None;
    for k in 0..n {
        let (a, b) = seg(k);
        if (a.y < y0) == (b.y < y0) {
            continue;
        }
        let t = (&y0 - &a.y) / (&b.y - &a.y);
        let x = &a.x + &t * (&b.x - &a.x);
        if best.as_ref().map_or(true, |(bx, ..)| x < *bx) {
            best = Some((x, k, t, b.y > a.y));
        }
    }
    let (_, kseg, tseg, upward) = best.expect("some segment crosses the ray");
    let arc_at = |k: usize, t: &Q| -> usize {
        match positions.iter().rposition(|(s, u)| (*s, u) < (k, t)) {
            Some(i) => i,
            None => nv.saturating_sub(1),
        }
    };
    let outer_arc = if nv == 0 { 0 } else { arc_at(kseg, &tseg) };
    let outer = if upward {
        Dart::left(outer_arc)
    } else {
        Dart::right(outer_arc)
    };

    // sample points
    let point_at = |k: usize, t: &Q| pts[k].add(&pts[(k + 1) % n].sub(&pts[k]).scale(t));
    let half = Q::new(1.into(), 2.into());
    let mut arc_samples = Vec::new();
    if nv == 0 {
        arc_samples.push((point_at(0, &half), pts[1 % n].sub(&pts[0])));
    } else {
        for i in 0..nv {
            let (k, t) = &positions[i];
            let next_t = per_seg[*k]
                .iter()
                .map(|(u, _)| u)
                .find(|u| *u > t)
                .cloned()
                .unwrap_or_else(|| Q::from_integer(1.into()));
            let mid = (t + &next_t) * &half;
            arc_samples.push((point_at(*k, &mid), pts[(k + 1) % n].sub(&pts[*k])));
        }
    }

    let map = if nv == 0 {
        CurveMap::circle(!upward)
    } else {
        CurveMap::new(visits, rot, outer).map_err(|e| nongeneric(format!("{e}")))?
    };
    Ok(Ingested {
        map,
        vertex_points,
        origins,
        arc_samples,
    })
}

pub fn polyline_to_diagram(points: &[Point], eps: f64) -> Result<PlanarDiagram, DiagramError> {
    let ing = ingest_polyline(points, eps)?;
    if let Some(v) = (0..ing.map.n_vertices()).find(|&v| ing.map.multiplicity(v) != 2) {
        return Err(nongeneric(format!(
            "multiple point of multiplicity {} at vertex {v}",
            ing.map.multiplicity(v)
        )));
    }
    PlanarDiagram::from_map(ing.map)
}
