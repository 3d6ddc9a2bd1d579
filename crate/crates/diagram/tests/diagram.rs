use doodle_diagram::polyline::{ingest_polyline, Q};
use doodle_diagram::*;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn eight() -> PlanarDiagram {
    parse_gauss_code("1 1 ; 1:+").unwrap()
}

fn sorted_indices(d: &PlanarDiagram) -> Vec<i64> {
    let mut v = d.face_indices().index;
    v.sort();
    v
}

fn pts(list: &[(i64, i64)]) -> Vec<Point> {
    list.iter().map(|&(x, y)| Point::from_i64(x, y)).collect()
}

/// Exact winding number of a closed polyline around `p` (p off the curve).
fn winding(points: &[Point], p: &Point) -> i64 {
    let n = points.len();
    let mut w = 0;
    for k in 0..n {
        let a = &points[k];
        let b = &points[(k + 1) % n];
        let side = (&b.x - &a.x) * (&p.y - &a.y) - (&p.x - &a.x) * (&b.y - &a.y);
        if a.y <= p.y {
            if b.y > p.y && side.is_positive() {
                w += 1;
            }
        } else if b.y <= p.y && side.is_negative() {
            w -= 1;
        }
    }
    w
}

#[test]
fn empty_code_is_the_circle() {
    let c = parse_gauss_code("").unwrap();
    assert_eq!(c.crossing_count(), 0);
    assert_eq!(c.faces().len(), 2);
    assert_eq!(sorted_indices(&c), vec![0, 1]);
    assert_eq!(c.basepoint_index(Basepoint::on_arc(0)).unwrap(), 1);
    let cw = parse_gauss_code("gauss:\nchirality:\nouter: 0L").unwrap();
    assert_eq!(sorted_indices(&cw), vec![-1, 0]);
}

#[test]
fn figure_eight() {
    let d = eight();
    assert_eq!(d.crossing_count(), 1);
    assert_eq!(d.faces().len(), 3);
    assert_eq!(sorted_indices(&d), vec![-1, 0, 1]);
    assert_eq!(d.crossing_index(0).unwrap(), 0);
    assert!(matches!(
        d.crossing_index(1),
        Err(DiagramError::UnknownCrossing(1))
    ));
    let fi = d.face_indices();
    // one arc borders the +1 lobe, the other the −1 lobe
    let mut bps: Vec<i64> = (0..2)
        .map(|a| d.basepoint_index(Basepoint::on_arc(a)).unwrap())
        .collect();
    bps.sort();
    assert_eq!(bps, vec![0, 1]);
    for a in 0..2 {
        let l = fi.of_dart(Dart::left(a));
        let r = fi.of_dart(Dart::right(a));
        assert_eq!(l, r + 1);
    }
    let s0 = d.crossing_sign(Basepoint::on_arc(0), 0).unwrap();
    let s1 = d.crossing_sign(Basepoint::on_arc(1), 0).unwrap();
    assert_eq!(s0, -s1);
    assert_eq!(
        d.mirror().crossing_sign(Basepoint::on_arc(0), 0).unwrap(),
        -s0
    );
}

#[test]
fn trefoil_shadow_has_two_triangles_for_the_outer_face() {
    let d = parse_gauss_code("gauss: 1 2 3 1 2 3\nchirality: 1=+1 2=-1 3=+1\n").unwrap();
    let faces = d.faces();
    assert_eq!(faces.len(), 5);
    let mut sizes: Vec<usize> = faces.iter().map(<[Dart]>::len).collect();
    sizes.sort();
    assert_eq!(sizes, vec![2, 2, 2, 3, 3]);
    assert_eq!(d.crossing_count(), 3);
}

#[test]
fn malformed_codes() {
    assert!(matches!(
        parse_gauss_code("1 1 1 ; 1:+"),
        Err(DiagramError::DuplicateVisit(_))
    ));
    assert!(matches!(
        parse_gauss_code("1 2 2 ; 1:+ 2:+"),
        Err(DiagramError::MissingVisit(_))
    ));
    assert!(matches!(
        parse_gauss_code("1 1 ; "),
        Err(DiagramError::MissingVisit(_))
    ));
    for c in ["+", "-"] {
        for e in ["+", "-"] {
            let code = format!("1 2 1 2 ; 1:{c} 2:{e}");
            assert!(matches!(
                parse_gauss_code(&code),
                Err(DiagramError::UnrealizableCode(_))
            ));
        }
    }
}

#[test]
fn gauss_round_trip() {
    for code in [
        "1 1 ; 1:+",
        "1 1 ; 1:-",
        "1 2 3 1 2 3 ; 1:+ 2:- 3:+",
        "1 2 2 1 ; 1:+ 2:-",
    ] {
        let Ok(d) = parse_gauss_code(code) else {
            continue;
        };
        let text = d.to_gauss_code();
        let back = parse_gauss_code(&text).unwrap();
        assert_eq!(back.canonical_key(), d.canonical_key(), "{code}");
        assert_eq!(back.to_gauss_code(), text);
    }
    let c = PlanarDiagram::circle();
    assert_eq!(parse_gauss_code(&c.to_gauss_code()).unwrap(), c);
}

#[test]
fn outer_face_can_be_moved() {
    let d = eight();
    for f in 0..d.faces().len() {
        let key = d.faces().key(f);
        let e = parse_gauss_code(&format!("1 1 ; 1:+ ; {key}")).unwrap();
        let fi = e.face_indices();
        assert_eq!(fi.index[fi.faces.face_of(key)], 0);
        for a in 0..2 {
            assert_eq!(fi.of_dart(Dart::left(a)), fi.of_dart(Dart::right(a)) + 1);
        }
    }
}

#[test]
fn reversal_negates_indices() {
    for code in [
        "1 1 ; 1:+",
        "1 2 3 1 2 3 ; 1:+ 2:- 3:+",
        "1 2 2 1 ; 1:+ 2:-",
    ] {
        let Ok(d) = parse_gauss_code(code) else {
            continue;
        };
        let r = d.reversed();
        let mut a = sorted_indices(&d);
        let mut b: Vec<i64> = sorted_indices(&r).into_iter().map(|x| -x).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(r.reversed().canonical_key(), d.canonical_key());
    }
}

#[test]
fn canonical_key_ignores_start_and_labels() {
    let a = parse_gauss_code("1 2 3 1 2 3 ; 1:+ 2:- 3:+").unwrap();
    let b = parse_gauss_code("b c a b c a ; a:+ b:+ c:-").unwrap();
    assert!(a.is_isomorphic(&b));
    let shifted = a.map().shifted(2);
    assert_eq!(shifted.canonical_key(), a.canonical_key());
}

#[test]
fn crossing_index_is_the_quadrant_mean() {
    // around any double point the four corners read i−1, i, i, i+1
    let d = parse_gauss_code("1 2 3 1 2 3 ; 1:+ 2:- 3:+").unwrap();
    let fi = d.face_indices();
    for x in 0..3 {
        let i = d.crossing_index(x).unwrap();
        let mut c: Vec<i64> = d
            .map()
            .corner_faces(&fi.faces, x)
            .into_iter()
            .map(|f| fi.index[f])
            .collect();
        c.sort();
        assert_eq!(c, vec![i - 1, i, i, i + 1]);
    }
}

#[test]
fn square_and_bowtie() {
    let sq = polyline_to_diagram(&pts(&[(0, 0), (2, 0), (2, 2), (0, 2)]), 1e-9).unwrap();
    assert_eq!(sq.crossing_count(), 0);
    assert_eq!(sorted_indices(&sq), vec![0, 1]);
    let cw = polyline_to_diagram(&pts(&[(0, 0), (0, 2), (2, 2), (2, 0)]), 1e-9).unwrap();
    assert_eq!(sorted_indices(&cw), vec![-1, 0]);
    let bow = polyline_to_diagram(&pts(&[(0, 0), (2, 2), (2, 0), (0, 2)]), 1e-9).unwrap();
    assert_eq!(bow.crossing_count(), 1);
    assert!(bow.is_isomorphic(&eight()) || bow.is_isomorphic(&eight().mirror()));
    assert_eq!(sorted_indices(&bow), vec![-1, 0, 1]);
}

#[test]
fn nongeneric_polylines() {
    // a vertex on another segment
    let t = pts(&[(0, 0), (4, 0), (2, 0), (2, 2)]);
    assert!(matches!(
        polyline_to_diagram(&t, 0.0),
        Err(DiagramError::NonGeneric(_))
    ));
    let touch = pts(&[(0, 0), (4, 0), (4, 2), (2, 0), (0, 2)]);
    assert!(matches!(
        polyline_to_diagram(&touch, 0.0),
        Err(DiagramError::NonGeneric(_))
    ));
    // crossing very close to a vertex
    let near = pts(&[(0, 0), (10, 10), (10, 0), (0, 10)]);
    let ok = polyline_to_diagram(&near, 1e-6);
    assert!(ok.is_ok());
    assert!(matches!(
        polyline_to_diagram(&near, 8.0),
        Err(DiagramError::NonGeneric(_))
    ));
}

#[test]
fn decimal_coordinates_are_exact() {
    let p = parse_polyline_json(r#"[[0.1, 0], ["0.3", 0], [0.2, 1e-1]]"#).unwrap();
    assert_eq!(p[0].x, Q::new(1.into(), 10.into()));
    assert_eq!(p[2].y, Q::new(1.into(), 10.into()));
    assert_eq!(polyline_to_diagram(&p, 0.0).unwrap().crossing_count(), 0);
}

fn random_polyline(rng: &mut ChaCha8Rng) -> Vec<Point> {
    let n = rng.gen_range(4..10);
    (0..n)
        .map(|_| Point::from_i64(rng.gen_range(-12..13), rng.gen_range(-12..13)))
        .collect()
}

#[test]
fn indices_match_winding_numbers() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let delta = Q::new(1.into(), num_bigint::BigInt::from(10).pow(12));
    let mut checked = 0;
    let mut tries = 0;
    while checked < 150 {
        tries += 1;
        assert!(tries < 20_000);
        let poly = random_polyline(&mut rng);
        let Ok(ing) = ingest_polyline(&poly, 0.0) else {
            continue;
        };
        if ing.map.n_vertices() > 0
            && (0..ing.map.n_vertices()).any(|v| ing.map.multiplicity(v) != 2)
        {
            continue;
        }
        let d = PlanarDiagram::from_map(ing.map.clone()).unwrap();
        let fi = d.face_indices();
        for (a, (p, dir)) in ing.arc_samples.iter().enumerate() {
            let normal = Point::new(-dir.y.clone(), dir.x.clone()).scale(&delta);
            let left = winding(&poly, &p.add(&normal));
            let right = winding(&poly, &p.sub(&normal));
            assert_eq!(left, fi.of_dart(Dart::left(a)), "arc {a} of {poly:?}");
            assert_eq!(right, fi.of_dart(Dart::right(a)));
        }
        // round trip through the Gauss code
        let back = parse_gauss_code(&d.to_gauss_code()).unwrap();
        assert_eq!(back.canonical_key(), d.canonical_key());
        checked += 1;
    }
}

#[test]
fn dual_cycles_accumulate_zero() {
    // walking around any vertex, the index changes sum to zero
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 50 {
        let poly = random_polyline(&mut rng);
        let Ok(d) = polyline_to_diagram(&poly, 0.0) else {
            continue;
        };
        let fi = d.face_indices();
        for v in 0..d.crossing_count() {
            let c = d.map().corner_faces(&fi.faces, v);
            let total: i64 = (0..c.len())
                .map(|k| fi.index[c[(k + 1) % c.len()]] - fi.index[c[k]])
                .sum();
            assert!(total.is_zero());
        }
        done += 1;
    }
}

#[test]
fn multiple_points_are_kept() {
    // three straight passes through the origin
    let p = pts(&[
        (-3, 0),
        (0, 0),
        (3, 0),
        (3, 5),
        (0, 3),
        (0, 0),
        (0, -3),
        (5, -3),
        (2, -2),
        (0, 0),
        (-2, 2),
        (-3, 6),
    ]);
    let ing = ingest_polyline(&p, 0.0).unwrap();
    let triple: Vec<usize> = (0..ing.map.n_vertices())
        .filter(|&v| ing.map.multiplicity(v) == 3)
        .collect();
    assert_eq!(triple.len(), 1);
    assert!(polyline_to_diagram(&p, 0.0).is_err());
}

#[test]
fn json_export() {
    let j = eight().to_json();
    assert_eq!(j.faces.len(), 3);
    assert_eq!(j.crossings[0].index_sum, 0);
    let s = serde_json::to_string(&j).unwrap();
    let back: DiagramJson = serde_json::from_str(&s).unwrap();
    assert_eq!(back, j);
}

#[test]
fn digitized_merkov_curve() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../data/merkov.json"
    ))
    .unwrap();
    let poly = parse_polyline_json(&text).unwrap();
    let d = polyline_to_diagram(&poly, 1e-6).unwrap();
    // exhaustive segment-pair count
    let n = poly.len();
    let mut pairs = 0;
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (a, b, c, e) = (&poly[i], &poly[(i + 1) % n], &poly[j], &poly[(j + 1) % n]);
            let o = |p: &Point, q: &Point, r: &Point| {
                let v = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            };
            if o(a, b, c) * o(a, b, e) < 0 && o(c, e, a) * o(c, e, b) < 0 {
                pairs += 1;
            }
        }
    }
    assert_eq!(d.crossing_count(), pairs);
    assert_eq!(pairs, 8);
    let back = parse_gauss_code(&d.to_gauss_code()).unwrap();
    assert_eq!(back, parse_gauss_code(&back.to_gauss_code()).unwrap());
    assert!(back.is_isomorphic(&d));
}
