//! Four doodles from the quasidoodle with two alternating triple points.

use doodle_diagram::{parse_polyline_json, polyline_to_diagram, CurveMap, Dart, PlanarDiagram};

use crate::error::MoveError;
use crate::moves::{collapse_map, map_sites};
use crate::quasi::{resolve_path, DegenerationProcess, Quasidoodle, Step};

/// Digitized polyline of a doodle that resists simplification.
pub const MERKOV_POLYLINE: &str = include_str!("../../../data/merkov.json");

pub fn merkov_curve() -> PlanarDiagram {
    let pts = parse_polyline_json(MERKOV_POLYLINE).expect("bundled polyline parses");
    polyline_to_diagram(&pts, 1e-9).expect("bundled polyline is generic")
}

#[derive(Clone, Debug)]
pub struct MerkovCandidates {
    /// The curve the quasidoodle was built from.
    pub source: PlanarDiagram,
    pub quasidoodle: Quasidoodle,
    pub process: DegenerationProcess,
    /// Cyclic order of the two triple points along the curve (0/1 labels).
    pub pattern: Vec<usize>,
    /// Sides taken at the two triple points, and the resulting doodle.
    pub candidates: Vec<([bool; 2], PlanarDiagram)>,
}

/// Collapses two vertex-disjoint triangles of the bundled curve into triple
/// points met alternately (a b a b a b) and resolves both in all four ways.
pub fn merkov_candidates() -> Result<MerkovCandidates, MoveError> {
    let source = merkov_curve();
    let m = source.map();
    let sites = map_sites(m).c_sites;
    for (i, &t1) in sites.iter().enumerate() {
        for &t2 in &sites[i + 1..] {
            if let Some(r) = try_pair(m, t1, t2)? {
                return Ok(MerkovCandidates { source, ..r });
            }
        }
    }
    Err(MoveError::NoRealization(
        "no pair of triangles collapses to an alternating pair of triple points".into(),
    ))
}

fn corners(m: &CurveMap, key: Dart) -> Vec<usize> {
    let faces = m.faces();
    let n = m.n_visits();
    let mut c: Vec<usize> = faces
        .boundary(faces.face_of(key))
        .iter()
        .map(|d| m.vertex_of((d.arc + 1) % n))
        .collect();
    c.sort();
    c
}

fn try_pair(m: &CurveMap, t1: Dart, t2: Dart) -> Result<Option<MerkovCandidates>, MoveError> {
    let (c1, c2) = (corners(m, t1), corners(m, t2));
    if c1.iter().any(|v| c2.contains(v)) {
        return Ok(None);
    }
    // arcs of the second triangle keep their start tags through the first collapse
    let faces = m.faces();
    let mut t2_tags: Vec<u64> = faces
        .boundary(faces.face_of(t2))
        .iter()
        .map(|d| m.tag(d.arc))
        .collect();
    t2_tags.sort();
    let Ok((j1, _)) = collapse_map(m, t1) else {
        return Ok(None);
    };
    let q1 = j1.map;
    let f1 = q1.faces();
    let Some(t2b) = (0..f1.len()).find(|&f| {
        let mut t: Vec<u64> = f1.boundary(f).iter().map(|d| q1.tag(d.arc)).collect();
        t.sort();
        t == t2_tags && f1.boundary(f).len() == 3
    }) else {
        return Ok(None);
    };
    let Ok((j2, _)) = collapse_map(&q1, f1.key(t2b)) else {
        return Ok(None);
    };
    let q = Quasidoodle::new(j2.map);
    let triples = q.branches();
    if triples.len() != 2 || triples.values().any(|b| b.len() != 3) {
        return Ok(None);
    }
    let vs: Vec<usize> = triples.keys().copied().collect();
    let pattern: Vec<usize> = q
        .map
        .visits()
        .iter()
        .filter_map(|v| vs.iter().position(|w| w == v))
        .collect();
    let alternating = pattern.len() == 6 && (0..6).all(|k| pattern[k] != pattern[(k + 1) % 6]);
    if !alternating {
        return Ok(None);
    }
    // the triple made first comes first; it is resolved last
    let mut steps: Vec<Step> = triples
        .values()
        .map(|b| Step::form_triple([b[0], b[1], b[2]]))
        .collect();
    let formed_first = |st: &Step| {
        let Step::FormTriple { vertex, .. } = *st else {
            return false;
        };
        q1.visit_with_tag(vertex)
            .map_or(false, |i| q1.multiplicity(q1.vertex_of(i)) == 3)
    };
    if !formed_first(&steps[0]) {
        steps.swap(0, 1);
    }
    let process = DegenerationProcess::new(steps);
    let mut candidates = Vec::new();
    for s in [[true, true], [true, false], [false, true], [false, false]] {
        candidates.push((s, resolve_path(&q, &process, &s)?));
    }
    Ok(Some(MerkovCandidates {
        source: PlanarDiagram::circle(),
        quasidoodle: q,
        process,
        pattern,
        candidates,
    }))
}
