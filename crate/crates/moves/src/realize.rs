//! Random polygonal curves with prescribed multiple points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use doodle_diagram::polyline::{ingest_polyline, parse_decimal, Point, VisitOrigin};

use crate::error::MoveError;
use crate::quasi::Quasidoodle;

/// A quasidoodle whose multiple points follow a given cyclic pattern.
#[derive(Clone, Debug)]
pub struct Realization {
    pub quasidoodle: Quasidoodle,
    /// Tag of the visit for each slot of the pattern.
    pub slot_tags: Vec<u64>,
    pub points: Vec<Point>,
}

const SPAN: i64 = 24;

/// Draws a closed polyline through one point per group label, visiting the
/// points in the cyclic order `pattern` (labels `0..`), each time along a
/// fresh direction so the branches are transverse. Among `tries` generic
/// drawings the one with the fewest double points is returned.
pub fn realize_pattern(
    pattern: &[usize],
    seed: u64,
    tries: usize,
) -> Result<Realization, MoveError> {
    let groups = pattern.iter().max().map_or(0, |&g| g + 1);
    let mut counts = vec![0usize; groups];
    for &g in pattern {
        counts[g] += 1;
    }
    if counts.iter().any(|&c| c < 2) {
        return Err(MoveError::NoRealization(
            "every label must occur at least twice".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Realization> = None;
    let mut attempts = 0;
    while attempts < 50 * tries.max(1) && (best.is_none() || attempts < tries) {
        attempts += 1;
        let Some(r) = attempt(pattern, &counts, &mut rng) else {
            continue;
        };
        let better = best.as_ref().map_or(true, |b| {
            r.quasidoodle.map.n_vertices() < b.quasidoodle.map.n_vertices()
        });
        if better {
            best = Some(r);
        }
    }
    best.ok_or_else(|| {
        MoveError::NoRealization(format!("no generic drawing in {attempts} attempts"))
    })
}

fn attempt(pattern: &[usize], counts: &[usize], rng: &mut ChaCha8Rng) -> Option<Realization> {
    let groups = counts.len();
    let centers: Vec<(i64, i64)> = (0..groups)
        .map(|_| {
            (
                rng.gen_range(-SPAN / 2..=SPAN / 2),
                rng.gen_range(-SPAN / 2..=SPAN / 2),
            )
        })
        .collect();
    if (0..groups).any(|i| (0..i).any(|j| centers[i] == centers[j])) {
        return None;
    }
    // pairwise non-parallel directions at each point
    let mut dirs: Vec<Vec<(i64, i64)>> = vec![Vec::new(); groups];
    let mut slot_dir = Vec::with_capacity(pattern.len());
    for &g in pattern {
        let d = loop {
            let d = (rng.gen_range(-4..=4i64), rng.gen_range(-4..=4i64));
            if d != (0, 0) && dirs[g].iter().all(|e| e.0 * d.1 - e.1 * d.0 != 0) {
                break d;
            }
        };
        dirs[g].push(d);
        slot_dir.push(d);
    }
    let small = parse_decimal("1/8").unwrap();
    let mut pts = Vec::new();
    let mut designated = Vec::new();
    for (k, &g) in pattern.iter().enumerate() {
        let c = Point::from_i64(centers[g].0, centers[g].1);
        let u = Point::from_i64(slot_dir[k].0, slot_dir[k].1).scale(&small);
        pts.push(c.sub(&u));
        designated.push(pts.len());
        pts.push(c.clone());
        pts.push(c.add(&u));
        // connector to the next slot: straight, or through a waypoint
        if rng.gen_bool(0.4) {
            pts.push(Point::from_i64(
                rng.gen_range(-SPAN..=SPAN),
                rng.gen_range(-SPAN..=SPAN),
            ));
        }
    }
    let ing = ingest_polyline(&pts, 1e-6).ok()?;
    let m = &ing.map;
    let mut slot_tags = Vec::with_capacity(pattern.len());
    for &k in &designated {
        let i = ing
            .origins
            .iter()
            .position(|o| *o == VisitOrigin::Vertex(k))?;
        slot_tags.push(m.tag(i));
    }
    // the multiple points must be exactly the designated ones
    for (k, &g) in pattern.iter().enumerate() {
        let v = m.vertex_of(m.visit_with_tag(slot_tags[k]).unwrap());
        if m.multiplicity(v) != counts[g] {
            return None;
        }
    }
    let extra = (0..m.n_vertices())
        .filter(|&v| m.multiplicity(v) > 2)
        .count();
    if extra != counts.iter().filter(|&&c| c > 2).count() {
        return None;
    }
    Some(Realization {
        quasidoodle: Quasidoodle::new(m.clone()),
        slot_tags,
        points: pts,
    })
}
