//! Quasidoodles (curves with multiple points) and their degeneration
//! processes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use doodle_diagram::{frame_sign, CurveMap, Dart, PlanarDiagram};

use crate::error::MoveError;
use crate::local::{join_branch_map, offset_branch};
use crate::moves::collapse_map;

/// Branches are named by the tag of their visit to the multiple point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    /// Three branches meet; `vertex` is the smallest of them and names the
    /// multiple point from now on.
    FormTriple { vertex: u64, branches: [u64; 3] },
    /// One more branch passes through the multiple point `vertex`.
    JoinBranch { vertex: u64, branch: u64 },
}

impl Step {
    pub fn form_triple(mut branches: [u64; 3]) -> Step {
        branches.sort();
        Step::FormTriple {
            vertex: branches[0],
            branches,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegenerationProcess {
    pub steps: Vec<Step>,
    /// Optional record of which side (`true` = positive) each step is later
    /// resolved to, innermost (last) step first. Characteristic numbers
    /// depend on `steps` only.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sides: Vec<bool>,
}

impl DegenerationProcess {
    pub fn new(steps: Vec<Step>) -> Self {
        DegenerationProcess {
            steps,
            sides: Vec::new(),
        }
    }

    /// Every step ordering consistent with the multiple points of `q`:
    /// per point, a triple and then one branch at a time, interleaved in
    /// all ways across points.
    pub fn all_modes(q: &Quasidoodle) -> Vec<DegenerationProcess> {
        let mut per_point: Vec<Vec<Vec<Step>>> = Vec::new();
        for v in q.singular_vertices() {
            let mut tags: Vec<u64> = q.map.visits_at(v).iter().map(|&i| q.map.tag(i)).collect();
            tags.sort();
            per_point.push(point_orders(&tags));
        }
        let mut out = Vec::new();
        let mut pick = vec![0usize; per_point.len()];
        loop {
            let seqs: Vec<&Vec<Step>> = per_point.iter().zip(&pick).map(|(p, &k)| &p[k]).collect();
            interleave(&seqs, &mut vec![0; seqs.len()], &mut Vec::new(), &mut out);
            // next combination
            let mut i = 0;
            loop {
                if i == pick.len() {
                    return out.into_iter().map(DegenerationProcess::new).collect();
                }
                pick[i] += 1;
                if pick[i] < per_point[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
        }
    }

    /// Number of full processes (orders times a side for every step).
    pub fn full_count(q: &Quasidoodle) -> u64 {
        let modes = Self::all_modes(q);
        let steps = modes.first().map_or(0, |m| m.steps.len());
        modes.len() as u64 * (1u64 << steps)
    }
}

fn point_orders(tags: &[u64]) -> Vec<Vec<Step>> {
    let m = tags.len();
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let rest: Vec<u64> = tags
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| ![a, b, c].contains(i))
                    .map(|x| *x.1)
                    .collect();
                let first = Step::form_triple([tags[a], tags[b], tags[c]]);
                let Step::FormTriple { vertex, .. } = first else {
                    unreachable!()
                };
                for perm in permutations(&rest) {
                    let mut s = vec![first];
                    s.extend(
                        perm.iter()
                            .map(|&branch| Step::JoinBranch { vertex, branch }),
                    );
                    out.push(s);
                }
            }
        }
    }
    out
}

fn permutations(xs: &[u64]) -> Vec<Vec<u64>> {
    if xs.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn interleave(
    seqs: &[&Vec<Step>],
    at: &mut Vec<usize>,
    cur: &mut Vec<Step>,
    out: &mut Vec<Vec<Step>>,
) {
    let mut done = true;
    for i in 0..seqs.len() {
        if at[i] < seqs[i].len() {
            done = false;
            cur.push(seqs[i][at[i]]);
            at[i] += 1;
            interleave(seqs, at, cur, out);
            at[i] -= 1;
            cur.pop();
        }
    }
    if done {
        out.push(cur.clone());
    }
}

/// A closed curve whose vertices may be multiple points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasidoodle {
    pub map: CurveMap,
}

impl Quasidoodle {
    pub fn new(map: CurveMap) -> Self {
        Quasidoodle { map }
    }

    pub fn from_diagram(d: &PlanarDiagram) -> Self {
        Quasidoodle {
            map: d.map().clone(),
        }
    }

    /// Σ (m − 1) over the points of multiplicity m ≥ 3.
    pub fn complexity(&self) -> usize {
        (0..self.map.n_vertices())
            .map(|v| self.map.multiplicity(v))
            .filter(|&m| m >= 3)
            .map(|m| m - 1)
            .sum()
    }

    pub fn singular_vertices(&self) -> Vec<usize> {
        (0..self.map.n_vertices())
            .filter(|&v| self.map.multiplicity(v) >= 3)
            .collect()
    }

    pub fn is_regular_doodle(&self) -> bool {
        self.singular_vertices().is_empty()
    }

    pub fn to_diagram(&self) -> Result<PlanarDiagram, MoveError> {
        Ok(PlanarDiagram::from_map(self.map.clone())?)
    }

    /// Branch tags through each multiple point, sorted, keyed by vertex.
    pub fn branches(&self) -> BTreeMap<usize, Vec<u64>> {
        self.singular_vertices()
            .into_iter()
            .map(|v| {
                let mut t: Vec<u64> = self
                    .map
                    .visits_at(v)
                    .iter()
                    .map(|&i| self.map.tag(i))
                    .collect();
                t.sort();
                (v, t)
            })
            .collect()
    }
}

/// Shrinks a bounded triangle of `d` to a triple point. The process records
/// the single formation step.
pub fn collapse_triangle(
    d: &PlanarDiagram,
    trigon: Dart,
) -> Result<(Quasidoodle, DegenerationProcess), MoveError> {
    let (j, tag) = collapse_map(d.map(), trigon)?;
    let q = Quasidoodle::new(j.map);
    let v = q.map.vertex_of(q.map.visit_with_tag(tag).unwrap());
    let t = q.map.visits_at(v);
    let step = Step::form_triple([q.map.tag(t[0]), q.map.tag(t[1]), q.map.tag(t[2])]);
    Ok((q, DegenerationProcess::new(vec![step])))
}

/// Moves the branch tagged `branch` into the multiple point containing
/// the visit tagged `vertex`.
pub fn join_branch(q: &Quasidoodle, vertex: u64, branch: u64) -> Result<Quasidoodle, MoveError> {
    let (map, _) = join_branch_map(&q.map, vertex, branch)?;
    Ok(Quasidoodle::new(map))
}

/// The two one-step resolutions of the last step of `dp`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub plus: Quasidoodle,
    pub minus: Quasidoodle,
    /// Offset direction of the moved branch that gives `plus`.
    pub plus_delta: i8,
    /// Values of the comparison that picked the positive side.
    pub plus_value: i64,
    pub minus_value: i64,
    pub rest: DegenerationProcess,
}

/// Resolves the last step of `dp`. For a triple point the positive side has
/// the larger Σ σ(x)·i(x) over the three new double points (basepoint just
/// before the moved branch); for a joined branch it is the side where the
/// remaining multiple point has the larger index.
pub fn resolve_last(q: &Quasidoodle, dp: &DegenerationProcess) -> Result<Resolution, MoveError> {
    let bad = |s: String| MoveError::InconsistentProcess(s);
    let last = *dp.steps.last().ok_or_else(|| bad("empty process".into()))?;
    let rest = DegenerationProcess {
        steps: dp.steps[..dp.steps.len() - 1].to_vec(),
        sides: dp.sides.iter().skip(1).copied().collect(),
    };
    let m = &q.map;
    let vertex_of_tag = |t: u64| {
        m.visit_with_tag(t)
            .map(|i| m.vertex_of(i))
            .ok_or_else(|| bad(format!("no branch {t}")))
    };
    let (moved, value): (u64, Box<dyn Fn(&CurveMap, &[(u64, Vec<u64>)]) -> i64>) = match last {
        Step::FormTriple { branches, .. } => {
            let v = vertex_of_tag(branches[0])?;
            let mut have: Vec<u64> = m.visits_at(v).iter().map(|&i| m.tag(i)).collect();
            have.sort();
            if have != branches {
                return Err(bad(format!(
                    "point of {} carries branches {have:?}",
                    branches[0]
                )));
            }
            let s = branches[0];
            let f = move |r: &CurveMap, passes: &[(u64, Vec<u64>)]| {
                let fi = r.indices().expect("resolution is a valid map");
                let n = r.n_visits();
                let s_pass = &passes.iter().find(|p| p.0 == s).unwrap().1;
                let bp = (r.visit_with_tag(s_pass[0]).unwrap() + n - 1) % n;
                let mut vs: Vec<usize> = s_pass
                    .iter()
                    .map(|&t| r.vertex_of(r.visit_with_tag(t).unwrap()))
                    .collect();
                vs.push(r.vertex_of(r.visit_with_tag(branches[1]).unwrap()));
                vs.iter()
                    .map(|&x| {
                        let w = r.visits_at(x);
                        let i = index_sum(r, &fi, x) / 4;
                        frame_sign(r, bp, w[0], w[1]) as i64 * i
                    })
                    .sum()
            };
            (s, Box::new(f))
        }
        Step::JoinBranch { vertex, branch } => {
            let v = vertex_of_tag(vertex)?;
            if vertex_of_tag(branch)? != v || m.multiplicity(v) < 4 {
                return Err(bad(format!(
                    "branch {branch} is not the last one joined to {vertex}"
                )));
            }
            let f = move |r: &CurveMap, _: &[(u64, Vec<u64>)]| {
                let fi = r.indices().expect("resolution is a valid map");
                index_sum(r, &fi, r.vertex_of(r.visit_with_tag(vertex).unwrap()))
            };
            (branch, Box::new(f))
        }
    };
    let up = offset_branch(m, moved, 1)?;
    let down = offset_branch(m, moved, -1)?;
    let vu = value(&up.map, &up.passes);
    let vd = value(&down.map, &down.passes);
    if vu == vd {
        return Err(MoveError::AmbiguousSide(vu));
    }
    let (plus, minus, plus_delta, pv, mv) = if vu > vd {
        (up.map, down.map, 1, vu, vd)
    } else {
        (down.map, up.map, -1, vd, vu)
    };
    Ok(Resolution {
        plus: Quasidoodle::new(plus),
        minus: Quasidoodle::new(minus),
        plus_delta,
        plus_value: pv,
        minus_value: mv,
        rest,
    })
}

fn index_sum(r: &CurveMap, fi: &doodle_diagram::FaceIndexMap, v: usize) -> i64 {
    r.corner_faces(&fi.faces, v)
        .iter()
        .map(|&f| fi.index[f])
        .sum()
}

/// Follows `sides` (positive = `true`, last step first) down to a doodle.
pub fn resolve_path(
    q: &Quasidoodle,
    dp: &DegenerationProcess,
    sides: &[bool],
) -> Result<PlanarDiagram, MoveError> {
    if sides.len() != dp.steps.len() {
        return Err(MoveError::InconsistentProcess(format!(
            "{} sides for {} steps",
            sides.len(),
            dp.steps.len()
        )));
    }
    let mut q = q.clone();
    let mut dp = DegenerationProcess::new(dp.steps.clone());
    for &s in sides {
        let r = resolve_last(&q, &dp)?;
        q = if s { r.plus } else { r.minus };
        dp = r.rest;
    }
    q.to_diagram()
}
