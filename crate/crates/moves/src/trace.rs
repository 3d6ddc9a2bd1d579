//! Random move traces and heuristic simplification.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use doodle_diagram::{parse_gauss_code, CurveMap, PlanarDiagram, Side};

use crate::error::MoveError;
use crate::moves::{apply_map, sites_with, tangency_candidates, MoveEvent};

/// A start diagram (as a Gauss code) and the events applied to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub start: String,
    pub events: Vec<MoveEvent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl MoveTrace {
    /// Every intermediate diagram, start included.
    pub fn replay(&self) -> Result<Vec<PlanarDiagram>, MoveError> {
        let mut d = parse_gauss_code(&self.start)?;
        let mut out = vec![d.clone()];
        for e in &self.events {
            d = PlanarDiagram::from_map(apply_map(d.map(), e)?)?;
            out.push(d.clone());
        }
        Ok(out)
    }

    pub fn end(&self) -> Result<PlanarDiagram, MoveError> {
        Ok(self.replay()?.pop().unwrap())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceConfig {
    pub steps: usize,
    /// Creation moves are not proposed at or above this many crossings.
    pub max_crossings: usize,
    pub kinks: bool,
    pub tangencies: bool,
    pub triangles: bool,
}

impl TraceConfig {
    pub fn new(steps: usize) -> Self {
        TraceConfig {
            steps,
            max_crossings: 10,
            kinks: true,
            tangencies: true,
            triangles: true,
        }
    }

    /// Doodle moves only.
    pub fn doodle(steps: usize) -> Self {
        TraceConfig {
            triangles: false,
            ..Self::new(steps)
        }
    }
}

/// One random applicable event, or `None` if the config allows nothing.
pub fn random_event<R: Rng>(
    m: &CurveMap,
    cfg: &TraceConfig,
    rng: &mut R,
) -> Option<(MoveEvent, CurveMap)> {
    let sites = sites_with(m, cfg.triangles);
    let crossings = m.n_vertices();
    let mut kinds = Vec::new();
    if cfg.kinks {
        if crossings < cfg.max_crossings {
            kinds.push(0);
        }
        if !sites.monogons.is_empty() {
            kinds.push(1);
        }
    }
    if cfg.tangencies {
        if crossings + 1 < cfg.max_crossings {
            kinds.push(2);
        }
        if !sites.digons.is_empty() {
            kinds.push(3);
        }
    }
    if cfg.triangles && !sites.c_sites.is_empty() {
        kinds.push(4);
    }
    for _ in 0..16 {
        let e = match *kinds.choose(rng)? {
            0 => MoveEvent::KinkCreate {
                arc: rng.gen_range(0..m.n_arcs()),
                side: if rng.gen() { Side::Left } else { Side::Right },
            },
            1 => MoveEvent::KinkRemove {
                face: *sites.monogons.choose(rng)?,
            },
            2 => {
                let s = sites.creation.choose(rng)?;
                let k = tangency_candidates(m, s.first, s.second).len();
                if k == 0 {
                    continue;
                }
                MoveEvent::TangencyCreate {
                    first: s.first,
                    second: s.second,
                    variant: rng.gen_range(0..k),
                }
            }
            3 => MoveEvent::TangencyRemove {
                face: *sites.digons.choose(rng)?,
            },
            _ => MoveEvent::Triangle {
                face: *sites.c_sites.choose(rng)?,
            },
        };
        if let Ok(r) = apply_map(m, &e) {
            return Some((e, r));
        }
    }
    None
}

/// `n` random moves from `d` with the default configuration.
pub fn random_trace(d: &PlanarDiagram, n: usize, seed: u64) -> MoveTrace {
    random_trace_with(d, &TraceConfig::new(n), seed)
}

pub fn random_trace_with(d: &PlanarDiagram, cfg: &TraceConfig, seed: u64) -> MoveTrace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = d.to_gauss_code();
    // replay from the parsed code so events refer to the same numbering
    let mut m = parse_gauss_code(&start)
        .expect("own gauss code parses")
        .into_map();
    let mut events = Vec::with_capacity(cfg.steps);
    for _ in 0..cfg.steps {
        match random_event(&m, cfg, &mut rng) {
            Some((e, r)) => {
                events.push(e);
                m = r;
            }
            None => break,
        }
    }
    MoveTrace {
        start,
        events,
        seed: Some(seed),
    }
}

/// Removes bounded monogons, then digons, until neither is left. Returns
/// the result and the number of moves made.
pub fn greedy_reduce(d: &PlanarDiagram) -> (PlanarDiagram, usize) {
    let (m, k) = greedy_map(d.map().clone());
    (
        PlanarDiagram::from_map(m).expect("moves keep diagrams valid"),
        k,
    )
}

pub(crate) fn greedy_map(mut m: CurveMap) -> (CurveMap, usize) {
    let mut moves = 0;
    loop {
        let sites = sites_with(&m, false);
        let e = match (sites.monogons.first(), sites.digons.first()) {
            (Some(&face), _) => MoveEvent::KinkRemove { face },
            (None, Some(&face)) => MoveEvent::TangencyRemove { face },
            (None, None) => return (m, moves),
        };
        m = apply_map(&m, &e).expect("listed site applies");
        moves += 1;
    }
}

#[derive(Clone, Debug)]
pub struct SimplifyReport {
    pub result: PlanarDiagram,
    pub moves: usize,
    pub restarts: usize,
    pub reached_circle: bool,
}

/// Greedy reduction, then randomized detours: a few creation moves followed
/// by greedy reduction, kept when they do not increase the crossing count.
/// At most `budget` moves are spent.
pub fn simplify(d: &PlanarDiagram, budget: usize, seed: u64) -> SimplifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (start, mut moves) = greedy_map(d.map().clone());
    let mut best = start.clone();
    let mut cur = start;
    let mut restarts = 0;
    let cfg = TraceConfig {
        steps: 0,
        max_crossings: usize::MAX,
        kinks: true,
        tangencies: true,
        triangles: false,
    };
    let create_only = |e: &MoveEvent| e.crossing_delta() > 0;
    while !best.is_circle() && moves < budget {
        let mut probe = cur.clone();
        let detour = rng.gen_range(1..=3);
        for _ in 0..detour {
            // propose creation moves only; removals are greedy's job
            let mut tries = 0;
            loop {
                tries += 1;
                match random_event(&probe, &cfg, &mut rng) {
                    Some((e, r)) if create_only(&e) => {
                        probe = r;
                        moves += 1;
                        break;
                    }
                    _ if tries > 8 => break,
                    _ => {}
                }
            }
        }
        let (r, k) = greedy_map(probe);
        moves += k;
        if r.n_vertices() <= cur.n_vertices() {
            cur = r;
            if cur.n_vertices() < best.n_vertices() {
                best = cur.clone();
            }
        } else if rng.gen_ratio(1, 50) {
            restarts += 1;
            cur = best.clone();
        }
    }
    let reached_circle = best.is_circle();
    SimplifyReport {
        result: PlanarDiagram::from_map(best).expect("valid"),
        moves,
        restarts,
        reached_circle,
    }
}
