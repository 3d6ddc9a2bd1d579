use doodle_cliques::{degeneration_modes, CliqueClass};
use doodle_diagram::{parse_gauss_code, Basepoint, PlanarDiagram};
use doodle_invariants::*;
use doodle_moves::{
    collapse_triangle, find_move_sites, random_trace_with, realize_pattern, resolve_last,
    DegenerationProcess, MoveEvent, TraceConfig,
};

fn eight() -> PlanarDiagram {
    parse_gauss_code("1 1 ; 1:+").unwrap()
}

fn cls(s: &str) -> CliqueClass {
    s.parse().unwrap()
}

/// Diagrams met along random traces, at most `max` crossings.
fn corpus(traces: u64, max: usize, cfg: &TraceConfig) -> Vec<PlanarDiagram> {
    let mut out = Vec::new();
    for seed in 0..traces {
        let t = random_trace_with(&eight(), cfg, seed);
        out.extend(
            t.replay()
                .unwrap()
                .into_iter()
                .filter(|d| d.crossing_count() <= max),
        );
    }
    out
}

#[test]
fn falling_binomials() {
    assert_eq!(binom_falling(1, 2), 0);
    assert_eq!(binom_falling(-1, 2), 1);
    assert_eq!(binom_falling(4, 3), 4);
    assert_eq!(binom_falling(-3, 3), -10);
    assert_eq!(binom_falling(0, 1), 0);
    for i in -6..=6 {
        assert_eq!(binom_falling(i, 1), i);
    }
}

#[test]
fn small_curves() {
    for beta in 1..=4 {
        assert_eq!(
            moment(&PlanarDiagram::circle(), Basepoint::on_arc(0), beta).unwrap(),
            0
        );
    }
    assert_eq!(moment_at_all_basepoints(&eight(), 1).unwrap(), vec![0, 0]);
    assert_eq!(strangeness(&eight()).unwrap(), 0);
    assert!(moment(&eight(), Basepoint::on_arc(0), 0).is_err());
}

#[test]
fn basepoint_independence() {
    let mut cfg = TraceConfig::new(12);
    cfg.max_crossings = 8;
    let ds = corpus(60, 8, &cfg);
    assert!(ds.len() >= 500, "{}", ds.len());
    for d in &ds {
        for beta in 1..=3 {
            let v = moment_at_all_basepoints(d, beta).unwrap();
            assert!(
                v.windows(2).all(|w| w[0] == w[1]),
                "{} β={beta}: {v:?}",
                d.to_gauss_code()
            );
        }
    }
}

#[test]
fn tangency_moves_keep_moments() {
    let mut cfg = TraceConfig::new(30);
    cfg.max_crossings = 8;
    cfg.triangles = false;
    let mut events = 0;
    let mut kink_changes = 0;
    for seed in 0..40 {
        let t = random_trace_with(&eight(), &cfg, seed);
        let ds = t.replay().unwrap();
        for (e, w) in t.events.iter().zip(ds.windows(2)) {
            let before: Vec<i64> = (1..=3)
                .map(|b| moment(&w[0], Basepoint::on_arc(0), b).unwrap())
                .collect();
            let after: Vec<i64> = (1..=3)
                .map(|b| moment(&w[1], Basepoint::on_arc(0), b).unwrap())
                .collect();
            match e {
                MoveEvent::TangencyCreate { .. } | MoveEvent::TangencyRemove { .. } => {
                    events += 1;
                    assert_eq!(before, after, "{e:?} on {}", w[0].to_gauss_code());
                }
                // measured only; kinks are not I-doodle moves
                _ => kink_changes += (before != after) as usize,
            }
        }
    }
    assert!(events >= 500, "{events}");
    let _ = kink_changes;
}

#[test]
fn strangeness_jump_is_one() {
    let m1 = Moment { beta: 1 };
    let mut sites = 0;
    for seed in 0..12 {
        let r = realize_pattern(&[0, 0, 0], seed, 3).unwrap();
        let dp = DegenerationProcess::all_modes(&r.quasidoodle).remove(0);
        let res = resolve_last(&r.quasidoodle, &dp).unwrap();
        let jump = m1.evaluate(&res.plus.to_diagram().unwrap()).unwrap()
            - m1.evaluate(&res.minus.to_diagram().unwrap()).unwrap();
        assert_eq!(jump, 1);
        assert_eq!(characteristic_number(&m1, &r.quasidoodle, &dp).unwrap(), 1);
        sites += 1;
    }
    // triangles met on random curves
    let mut cfg = TraceConfig::new(10);
    cfg.max_crossings = 7;
    for d in corpus(30, 7, &cfg) {
        for face in find_move_sites(&d).c_sites.into_iter().take(1) {
            let (q, dp) = collapse_triangle(&d, face).unwrap();
            assert_eq!(characteristic_number(&m1, &q, &dp).unwrap(), 1);
            sites += 1;
        }
        if sites >= 40 {
            break;
        }
    }
    assert!(sites >= 20, "{sites}");
}

#[test]
fn strangeness_has_order_two() {
    let m1 = Moment { beta: 1 };
    let spec = SampleSpec::configurations(3, vec![1, 2, 3]);
    let report = order_upper_test(&m1, 2, &spec).unwrap();
    assert!(report.passed, "{report:?}");
    assert_eq!(report.rows.len(), 3 * 4);
    assert_eq!(report.processes, 3 * 16);
}

#[test]
fn second_moment_has_order_three() {
    let m2 = Memoized::new(Moment { beta: 2 });
    let spec = SampleSpec::configurations(4, vec![5, 6]);
    assert_eq!(spec.classes.len(), 4);
    let report = order_upper_test(&m2, 3, &spec).unwrap();
    assert!(
        report.passed,
        "{:?}",
        report
            .rows
            .iter()
            .filter(|r| r.value != 0)
            .collect::<Vec<_>>()
    );
    assert!(m2.cached() > 0);
}

#[test]
fn second_moment_detects_quadruple_point() {
    let m2 = Moment { beta: 2 };
    let report = order_upper_test(&m2, 2, &SampleSpec::configurations(3, vec![7])).unwrap();
    assert!(!report.passed);
    assert!(report.rows.iter().any(|r| r.value != 0));
}

#[test]
fn top_symbols() {
    let seeds = [11, 12, 13, 14, 15];
    let m1 = Moment { beta: 1 };
    let triple = cls("aaa");
    for mode in degeneration_modes(&triple).unwrap() {
        assert_eq!(top_symbol(&m1, &triple, &mode, &seeds).unwrap(), 1);
    }
    let cross = cls("aaaa");
    let m2 = Moment { beta: 2 };
    let mut symbols = Vec::new();
    for mode in degeneration_modes(&cross).unwrap() {
        assert_eq!(top_symbol(&m1, &cross, &mode, &seeds[..3]).unwrap(), 0);
        symbols.push(top_symbol(&m2, &cross, &mode, &seeds).unwrap());
    }
    assert!(symbols.iter().any(|&s| s != 0), "{symbols:?}");
}

#[test]
fn reordered_markings_agree() {
    // the two interleavings of a (3,3) clique's triples
    let m3 = Moment { beta: 3 };
    for class in ["aaabbb", "aababb", "ababab"] {
        let c = cls(class);
        let modes = degeneration_modes(&c).unwrap();
        assert_eq!(modes.len(), 2);
        let a = top_symbol(&m3, &c, &modes[0], &[21, 22, 23]).unwrap();
        let b = top_symbol(&m3, &c, &modes[1], &[21, 22, 23]).unwrap();
        assert_eq!(a, b, "{class}");
    }
}
