use doodle_diagram::{parse_gauss_code, Dart, PlanarDiagram, Side};
use doodle_moves::*;

fn trefoil() -> PlanarDiagram {
    parse_gauss_code("1 2 3 1 2 3 ; 1:+ 2:- 3:+").unwrap()
}

fn eight() -> PlanarDiagram {
    parse_gauss_code("1 1 ; 1:+").unwrap()
}

#[test]
fn sites_of_small_curves() {
    let c = find_move_sites(&PlanarDiagram::circle());
    assert!(c.monogons.is_empty() && c.digons.is_empty() && c.c_sites.is_empty());
    assert!(!c.creation.is_empty());

    let e = find_move_sites(&eight());
    assert_eq!(e.monogons.len(), 2);

    let t = find_move_sites(&trefoil());
    assert_eq!(t.triangle_faces.len(), 2);
    assert_eq!(t.c_sites.len(), 1);
    assert_eq!(t.digons.len(), 3);
}

#[test]
fn kink_and_tangency_round_trips() {
    let e = eight();
    let face = find_move_sites(&e).monogons[0];
    let c = apply_move(&e, &MoveEvent::KinkRemove { face }).unwrap();
    assert_eq!(c.crossing_count(), 0);

    let circle = PlanarDiagram::circle();
    for site in find_move_sites(&circle).creation {
        let vs = tangency_variants(&circle, site.first, site.second);
        assert!(!vs.is_empty(), "no tangency on {site:?}");
        for (variant, v) in vs.iter().enumerate() {
            assert_eq!(v.crossing_count(), 2);
            let ev = MoveEvent::TangencyCreate {
                first: site.first,
                second: site.second,
                variant,
            };
            let inv = inverse_event(&circle, &ev).unwrap();
            assert!(matches!(inv, MoveEvent::TangencyRemove { .. }));
            assert!(apply_move(v, &inv).unwrap().is_isomorphic(&circle));
        }
    }
    for side in [Side::Left, Side::Right] {
        let k = apply_move(&circle, &MoveEvent::KinkCreate { arc: 0, side }).unwrap();
        assert_eq!(k.crossing_count(), 1);
        assert_eq!(k.faces().len(), 3);
    }
    // the two kinks of the circle are different curves in the plane
    let l = apply_move(
        &circle,
        &MoveEvent::KinkCreate {
            arc: 0,
            side: Side::Left,
        },
    )
    .unwrap();
    let r = apply_move(
        &circle,
        &MoveEvent::KinkCreate {
            arc: 0,
            side: Side::Right,
        },
    )
    .unwrap();
    assert!(!l.is_isomorphic(&r));
}

#[test]
fn stale_sites_are_reported() {
    let e = eight();
    let err = apply_move(
        &e,
        &MoveEvent::TangencyRemove {
            face: Dart::left(0),
        },
    )
    .unwrap_err();
    assert!(matches!(err, MoveError::SiteVanished(_)));
    let err = apply_move(
        &PlanarDiagram::circle(),
        &MoveEvent::KinkRemove {
            face: Dart::left(0),
        },
    )
    .unwrap_err();
    assert!(matches!(err, MoveError::SiteVanished(_)));
    let err = apply_move(
        &e,
        &MoveEvent::KinkCreate {
            arc: 9,
            side: Side::Left,
        },
    )
    .unwrap_err();
    assert!(matches!(err, MoveError::SiteVanished(_)));
}

#[test]
fn trefoil_triangle_move() {
    let t = trefoil();
    let face = find_move_sites(&t).c_sites[0];
    let t2 = apply_move(&t, &MoveEvent::Triangle { face }).unwrap();
    assert_eq!(t2.crossing_count(), 3);
    assert!(!t2.is_isomorphic(&t));
    // every side of the triangle has its two crossings swapped: 1 2 3 1 2 3
    // becomes 1 1 2 2 3 3 up to rotation
    let word = |d: &PlanarDiagram| d.to_gauss_code().lines().next().unwrap().to_string();
    assert_eq!(word(&t2), "gauss: 1 2 2 3 3 1");
    let inv = inverse_event(&t, &MoveEvent::Triangle { face }).unwrap();
    assert!(apply_move(&t2, &inv).unwrap().is_isomorphic(&t));
}

#[test]
fn collapse_and_resolve_a_triangle() {
    let t = trefoil();
    let face = find_move_sites(&t).c_sites[0];
    let (q, dp) = collapse_triangle(&t, face).unwrap();
    assert_eq!(q.complexity(), 2);
    assert_eq!(q.map.n_vertices(), 1);
    assert_eq!(q.map.multiplicity(0), 3);
    let r = resolve_last(&q, &dp).unwrap();
    assert!(r.rest.steps.is_empty());
    let plus = r.plus.to_diagram().unwrap();
    let minus = r.minus.to_diagram().unwrap();
    let flipped = apply_move(&t, &MoveEvent::Triangle { face }).unwrap();
    let both = [plus.canonical_key(), minus.canonical_key()];
    assert!(both.contains(&t.canonical_key()));
    assert!(both.contains(&flipped.canonical_key()));
    assert!(r.plus_value > r.minus_value);
    assert_eq!(DegenerationProcess::full_count(&q), 2);
}

#[test]
fn joining_a_fourth_branch() {
    let r = realize_pattern(&[0, 0, 0, 0], 5, 20).unwrap();
    let q = &r.quasidoodle;
    assert_eq!(q.complexity(), 3);
    let modes = DegenerationProcess::all_modes(q);
    assert_eq!(modes.len(), 4);
    assert_eq!(DegenerationProcess::full_count(q), 16);
    for dp in &modes {
        let res = resolve_last(q, dp).unwrap();
        assert_eq!(res.plus.complexity(), 2);
        assert_eq!(res.minus.complexity(), 2);
        // joining the branch back recovers the quadruple point
        let Step::JoinBranch { vertex, branch } = *dp.steps.last().unwrap() else {
            panic!()
        };
        let back = join_branch(&res.plus, vertex, branch).unwrap();
        assert_eq!(back.complexity(), 3);
        assert_eq!(back.map.canonical_key(), q.map.canonical_key());
        for sides in [[true, true], [true, false], [false, true], [false, false]] {
            let d = resolve_path(q, dp, &sides).unwrap();
            assert!(d.crossing_count() >= 6);
        }
    }
}

#[test]
fn join_rejects_far_branches() {
    let r = realize_pattern(&[0, 0, 0], 11, 10).unwrap();
    let q = &r.quasidoodle;
    let t = r.slot_tags[0];
    // a branch of the triple point itself is not adjacent
    let err = join_branch(q, t, r.slot_tags[1]).unwrap_err();
    assert!(matches!(err, MoveError::BranchNotAdjacent { .. }));
}

#[test]
fn two_triple_points_add_up() {
    let r = realize_pattern(&[0, 0, 0, 1, 1, 1], 3, 10).unwrap();
    assert_eq!(r.quasidoodle.complexity(), 4);
    assert_eq!(DegenerationProcess::all_modes(&r.quasidoodle).len(), 2);
    let r = realize_pattern(&[0, 0, 0, 0, 1, 1, 1], 3, 10).unwrap();
    assert_eq!(DegenerationProcess::full_count(&r.quasidoodle), 96);
    let r = realize_pattern(&[0, 0, 0, 0, 0], 3, 10).unwrap();
    assert_eq!(DegenerationProcess::all_modes(&r.quasidoodle).len(), 20);
}

#[test]
fn traces_are_deterministic_and_replayable() {
    let c = PlanarDiagram::circle();
    assert!(random_trace(&c, 0, 1).events.is_empty());
    let a = random_trace(&c, 40, 7);
    let b = random_trace(&c, 40, 7);
    assert_eq!(a, b);
    let json = serde_json::to_string(&a).unwrap();
    let back: MoveTrace = serde_json::from_str(&json).unwrap();
    assert_eq!(back, a);
    let steps = a.replay().unwrap();
    assert_eq!(steps.len(), a.events.len() + 1);
    for (w, e) in steps.windows(2).zip(&a.events) {
        assert_eq!(
            w[1].crossing_count() as i64 - w[0].crossing_count() as i64,
            e.crossing_delta()
        );
    }
}

#[test]
fn moves_undo_on_random_diagrams() {
    for seed in 0..40 {
        let d = random_trace(&PlanarDiagram::circle(), 12, seed)
            .end()
            .unwrap();
        let t = random_trace(&d, 6, seed + 1000);
        let states = t.replay().unwrap();
        for (w, e) in states.windows(2).zip(&t.events) {
            let inv = inverse_event(&w[0], e).unwrap_or_else(|err| {
                panic!("seed {seed}: {e:?}: {err}\n{}", w[0].to_gauss_code())
            });
            let back = apply_move(&w[1], &inv).unwrap();
            assert!(back.is_isomorphic(&w[0]), "seed {seed}: {e:?} / {inv:?}");
        }
    }
}

#[test]
fn gauss_round_trip_on_traced_diagrams() {
    for seed in 0..100 {
        let d = random_trace_with(
            &PlanarDiagram::circle(),
            &TraceConfig {
                max_crossings: 8,
                ..TraceConfig::new(25)
            },
            seed,
        )
        .end()
        .unwrap();
        assert!(d.crossing_count() <= 9);
        let back = parse_gauss_code(&d.to_gauss_code()).unwrap();
        assert!(back.is_isomorphic(&d));
    }
}

#[test]
fn random_ab_traces_reduce_greedily() {
    for seed in 0..1000 {
        let t = random_trace_with(&PlanarDiagram::circle(), &TraceConfig::doodle(20), seed);
        let (r, _) = greedy_reduce(&t.end().unwrap());
        assert_eq!(r.crossing_count(), 0, "seed {seed}");
    }
}

#[test]
fn merkov_pipeline() {
    let c = merkov_candidates().unwrap();
    assert_eq!(c.candidates.len(), 4);
    assert_eq!(c.quasidoodle.complexity(), 4);
    assert!(c.candidates.iter().any(|(_, d)| d.is_isomorphic(&c.source)));
    let mut trivial = 0;
    for (i, (_, d)) in c.candidates.iter().enumerate() {
        let r = simplify(d, 100_000, i as u64);
        if r.reached_circle {
            trivial += 1;
        } else {
            assert!(r.result.crossing_count() >= 6);
        }
    }
    assert!(trivial >= 3, "only {trivial} candidates reduced");
}
