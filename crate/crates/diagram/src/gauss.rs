//! Signed Gauss codes.
//!
//! ```text
//! gauss: 1 2 3 1 2 3
//! chirality: 1=+1 2=+1 3=+1
//! outer: 0R
//! ```
//!
//! The outer face is named by the smallest dart on its boundary (`<arc>L` or
//! `<arc>R`); a bare arc number is accepted when it names a unique face. The
//! one-line form `1 1 ; 1:+ [; outer]` is read as well. Without an `outer`
//! entry the face with the longest boundary is taken.

use std::collections::HashMap;

use crate::diagram::{chirality_of, PlanarDiagram};
use crate::error::DiagramError;
use crate::map::{CurveMap, Dart, Faces, HalfEdge, Side};

pub fn parse_gauss_code(text: &str) -> Result<PlanarDiagram, DiagramError> {
    let (seq, chir, outer) = split_sections(text)?;
    build(&seq, &chir, outer.as_deref())
}

fn split_sections(text: &str) -> Result<(Vec<String>, Vec<String>, Option<String>), DiagramError> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty())
        .collect();
    let keyed = lines.iter().any(|l| l.starts_with("gauss:"));
    let words = |s: &str| -> Vec<String> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|w| !w.is_empty())
            .map(str::to_string)
            .collect()
    };
    if keyed {
        let mut seq = None;
        let mut chir = Vec::new();
        let mut outer = None;
        for l in lines {
            if let Some(r) = l.strip_prefix("gauss:") {
                seq = Some(words(r));
            } else if let Some(r) = l.strip_prefix("chirality:") {
                chir.extend(words(r));
            } else if let Some(r) = l.strip_prefix("outer:") {
                let r = r.trim();
                if !r.is_empty() {
                    outer = Some(r.to_string());
                }
            } else {
                return Err(DiagramError::Parse(format!("unexpected line `{l}`")));
            }
        }
        Ok((seq.unwrap_or_default(), chir, outer))
    } else {
        let joined = lines.join(" ");
        let parts: Vec<&str> = joined.split(';').collect();
        if parts.len() > 3 {
            return Err(DiagramError::Parse("too many `;` sections".into()));
        }
        let seq = words(parts[0]);
        let chir = parts.get(1).map(|s| words(s)).unwrap_or_default();
        let outer = parts
            .get(2)
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty());
        Ok((seq, chir, outer))
    }
}

fn parse_sign(s: &str) -> Option<i8> {
    match s {
        "+" | "+1" | "1" => Some(1),
        "-" | "-1" | "−" | "−1" => Some(-1),
        _ => None,
    }
}

fn build(
    seq: &[String],
    chir: &[String],
    outer: Option<&str>,
) -> Result<PlanarDiagram, DiagramError> {
    // crossing labels in order of first appearance
    let mut label_of: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<&str> = Vec::new();
    let mut visits = Vec::with_capacity(seq.len());
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for (i, w) in seq.iter().enumerate() {
        let v = *label_of.entry(w.as_str()).or_insert_with(|| {
            labels.push(w.as_str());
            seen.push(Vec::new());
            labels.len() - 1
        });
        seen[v].push(i);
        if seen[v].len() > 2 {
            return Err(DiagramError::DuplicateVisit(w.clone()));
        }
        visits.push(v);
    }
    if let Some(v) = seen.iter().position(|s| s.len() != 2) {
        return Err(DiagramError::MissingVisit(labels[v].to_string()));
    }
    let mut sign = vec![None; labels.len()];
    for tok in chir {
        let (id, s) = tok
            .split_once('=')
            .or_else(|| tok.split_once(':'))
            .ok_or_else(|| DiagramError::Parse(format!("bad chirality entry `{tok}`")))?;
        let s = parse_sign(s.trim())
            .ok_or_else(|| DiagramError::Parse(format!("bad chirality sign in `{tok}`")))?;
        let v = *label_of
            .get(id.trim())
            .ok_or_else(|| DiagramError::MissingVisit(id.trim().to_string()))?;
        if sign[v].replace(s).is_some() {
            return Err(DiagramError::Parse(format!(
                "chirality of `{id}` given twice"
            )));
        }
    }
    if let Some(v) = sign.iter().position(Option::is_none) {
        return Err(DiagramError::MissingVisit(labels[v].to_string()));
    }
    if visits.is_empty() {
        let map = match outer {
            None => CurveMap::circle(true),
            Some(o) => {
                let d: Dart = o.parse().or_else(|e| match o.trim() {
                    "0" => Ok(Dart::right(0)),
                    _ => Err(e),
                })?;
                if d.arc != 0 {
                    return Err(DiagramError::Parse(format!("circle has no arc {}", d.arc)));
                }
                CurveMap::circle(d.side == Side::Right)
            }
        };
        return PlanarDiagram::from_map(map);
    }
    let rot: Vec<Vec<HalfEdge>> = seen
        .iter()
        .zip(&sign)
        .map(|(s, c)| rotation_for(s[0], s[1], c.unwrap()))
        .collect();
    let map = CurveMap::new(visits, rot, Dart::left(0)).map_err(|e| match e {
        DiagramError::Invalid(s) => DiagramError::UnrealizableCode(s),
        e => e,
    })?;
    let faces = map.faces();
    let outer_dart = match outer {
        Some(o) => resolve_outer(&faces, o, map.n_arcs())?,
        None => default_outer(&faces),
    };
    PlanarDiagram::from_map(map.with_outer(outer_dart)?)
}

/// Rotation of a double point visited at positions p < q.
pub(crate) fn rotation_for(p: usize, q: usize, chirality: i8) -> Vec<HalfEdge> {
    if chirality > 0 {
        vec![
            HalfEdge::out(p),
            HalfEdge::inc(q),
            HalfEdge::inc(p),
            HalfEdge::out(q),
        ]
    } else {
        vec![
            HalfEdge::out(p),
            HalfEdge::out(q),
            HalfEdge::inc(p),
            HalfEdge::inc(q),
        ]
    }
}

fn resolve_outer(faces: &Faces, o: &str, arcs: usize) -> Result<Dart, DiagramError> {
    if let Ok(d) = o.parse::<Dart>() {
        if d.arc >= arcs {
            return Err(DiagramError::Parse(format!(
                "outer face key {d} names no arc"
            )));
        }
        return Ok(d);
    }
    let a: usize = o
        .trim()
        .parse()
        .map_err(|_| DiagramError::Parse(format!("bad outer face key `{o}`")))?;
    if a >= arcs {
        return Err(DiagramError::Parse(format!(
            "outer face key {a} names no arc"
        )));
    }
    let hits: Vec<usize> = (0..faces.len())
        .filter(|&f| faces.key(f).arc == a)
        .collect();
    match hits.as_slice() {
        [f] => Ok(faces.key(*f)),
        [] => Err(DiagramError::Parse(format!("no face has smallest arc {a}"))),
        _ => Err(DiagramError::Parse(format!(
            "arc {a} is the smallest arc of two faces; write {a}L or {a}R"
        ))),
    }
}

/// Face with the longest boundary; ties go to the smaller face key.
pub fn default_outer(faces: &Faces) -> Dart {
    let f = (0..faces.len())
        .max_by(|&a, &b| {
            faces
                .boundary(a)
                .len()
                .cmp(&faces.boundary(b).len())
                .then(faces.key(b).cmp(&faces.key(a)))
        })
        .unwrap();
    faces.key(f)
}

impl PlanarDiagram {
    /// Gauss code with crossings numbered 1.. in order of first appearance.
    pub fn to_gauss_code(&self) -> String {
        let map = self.map();
        let faces = map.faces();
        let outer = faces.key(faces.outer());
        if map.is_circle() {
            return format!("gauss:\nchirality:\nouter: {outer}\n");
        }
        let mut label = vec![0usize; map.n_vertices()];
        let mut first = Vec::new();
        for (i, &v) in map.visits().iter().enumerate() {
            if label[v] == 0 {
                first.push((v, i));
                label[v] = first.len();
            }
        }
        let seq: Vec<String> = map.visits().iter().map(|&v| label[v].to_string()).collect();
        let chir: Vec<String> = first
            .iter()
            .map(|&(v, p)| {
                let q = map.visits_at(v)[1];
                let c = chirality_of(map, p, q);
                format!("{}={}", label[v], if c > 0 { "+1" } else { "-1" })
            })
            .collect();
        format!(
            "gauss: {}\nchirality: {}\nouter: {}\n",
            seq.join(" "),
            chir.join(" "),
            outer
        )
    }
}
