use doodle_blocks::*;
use doodle_cliques::CliqueClass;
use doodle_homology::{GroupPresentation, Ring};

const Z2: Ring = Ring::Zp(2);
const Z5: Ring = Ring::Zp(5);

fn cls(s: &str) -> CliqueClass {
    s.parse().unwrap()
}

fn top(s: &str, ring: Ring) -> BlockHomology {
    block_top_homology(&block(&cls(s)).unwrap(), ring).unwrap()
}

fn free(n: usize) -> GroupPresentation {
    GroupPresentation::free(n)
}

#[test]
fn base_orientation() {
    assert_eq!(block(&cls("aaaa")).unwrap().epsilon_base, -1);
    assert_eq!(block(&cls("ababab")).unwrap().epsilon_base, -1);
    assert_eq!(block(&cls("aaaaa:4")).unwrap().epsilon_base, 1);
}

#[test]
fn wang_groups() {
    let a = top("aaaa", Ring::Z);
    assert_eq!((a.top, a.second), (free(1), free(1)));
    let b = top("aaa2", Ring::Z);
    assert_eq!((b.top, b.second), (free(2), free(2)));
    assert_eq!(top("aaaaa", Ring::Z).top, free(2));
    for c in ["aaabbb", "aababb", "ababab"] {
        assert_eq!(top(c, Ring::Z).top, free(1), "{c}");
    }
    let k4 = "aaaa:4";
    assert!(top(k4, Ring::Z).top.is_zero());
    assert_eq!(top(k4, Z2).top, free(1));
    assert!(top(k4, Z5).top.is_zero());
}

#[test]
fn equivariant_ranks() {
    // complete graphs on five and six points, stars, crosses
    assert_eq!(equivariant_cycles(&block(&cls("aaaaa")).unwrap()).len(), 2);
    for ring in [Ring::Z, Z2, Z5] {
        assert_eq!(top("aaaaaa:4", ring).top.free_rank, 2, "{ring:?}");
    }
    assert!(top("aaaaa:4", Ring::Z).top.is_zero());
    assert_eq!(top("aaaaa:4", Z5).top.free_rank, 1);
    assert_eq!(top("aaaa", Ring::Z).top, free(1));
}

#[test]
fn block_cycles_match_wang() {
    for p in 2..=3 {
        let cx = column_complex(p, Context::Doodle).unwrap();
        for (i, b) in cx.blocks.iter().enumerate() {
            let h = block_top_homology(b, Ring::Z).unwrap();
            assert_eq!(cx.block_cycles(i).len(), h.top.free_rank, "{}", b.class);
        }
    }
}

#[test]
fn doodle_columns() {
    for ring in [Ring::Z, Z2, Z5] {
        let r2 = auxiliary_column(2, 3, Context::Doodle, ring).unwrap();
        let degs: Vec<i64> = r2.groups.iter().map(|g| g.degree).collect();
        assert_eq!(degs, vec![-3, -4]);
        assert!(r2.groups.iter().all(|g| g.group.free_rank == 1));
        let r3 = auxiliary_column(3, 3, Context::Doodle, ring).unwrap();
        assert_eq!(r3.groups.len(), 2);
        assert!(r3.groups.iter().all(|g| g.group.free_rank == 1));
        assert!(r3.unmodeled_degrees.is_empty());
    }
    assert!(auxiliary_column(6, 3, Context::Doodle, Ring::Z).is_err());
    assert!(auxiliary_column(3, 4, Context::Doodle, Ring::Z).is_err());
}

#[test]
fn third_column_and_the_double_doubles() {
    let cx = column_complex(3, Context::Doodle).unwrap();
    let d = cx.block_index(&cls("a2a2")).unwrap();
    assert!(cx.is_subcomplex(&[d]));
    let nonzero = |h: Vec<(i64, GroupPresentation)>| -> Vec<(i64, GroupPresentation)> {
        h.into_iter().filter(|(_, g)| !g.is_zero()).collect()
    };
    let sub = nonzero(cx.restricted(&[d]).homology(Ring::Z).unwrap());
    assert_eq!(sub, vec![(-4, free(1)), (-3, free(1))]);
    // the rest of the column: the second class of the cross meets the
    // double-point block at four sites, which cancel only modulo 2
    let rest: Vec<usize> = (0..cx.blocks.len()).filter(|&i| i != d).collect();
    let quotient = cx.restricted(&rest);
    let two = GroupPresentation::from_factors(0, [2.into()]);
    assert_eq!(
        nonzero(quotient.homology(Ring::Z).unwrap()),
        vec![(-3, two)]
    );
    assert!(quotient
        .homology(Z5)
        .unwrap()
        .iter()
        .all(|(_, g)| g.is_zero()));
    assert_eq!(nonzero(quotient.homology(Z2).unwrap()).len(), 2);
}

#[test]
fn fourth_doodle_column() {
    let r = auxiliary_column(4, 3, Context::Doodle, Ring::Z).unwrap();
    assert_eq!(r.groups[0].degree, -1);
    assert_eq!(r.groups[0].group, free(1));
    assert_eq!(r.generators.len(), 1);
    let pieces = &r.generators[0].pieces;
    assert_eq!(pieces.len(), 1);
    assert_eq!(pieces[0].class, "ababab");
    assert!(r.unmodeled_degrees.iter().all(|&d| d < -1));
    assert!(r.cross_group_d1.iter().all(|c| c.trivial));
}

#[test]
fn fundamental_cycle_anchors() {
    let cx = column_complex(4, Context::Doodle).unwrap();
    let j = cx.block_index(&cls("ababab")).unwrap();
    let z = cx.block_cycles(j);
    assert_eq!(z.len(), 1);
    let deg = cx.blocks[j].top_degree();
    // the five cross-group collisions cancel
    assert!(cx.boundary(deg, &z[0]).iter().all(|c| c == &0.into()));
    let checks = boundary_checks(&cx, None);
    for source in ["aaabbb", "aababb", "aaaaa"] {
        let cycles: std::collections::BTreeSet<usize> = checks
            .iter()
            .filter(|c| c.source == source)
            .map(|c| c.cycle)
            .collect();
        assert!(!cycles.is_empty(), "{source}");
        for ci in cycles {
            let degenerate_hit = checks.iter().any(|c| {
                c.source == source
                    && c.cycle == ci
                    && !cls(&c.target).is_configuration()
                    && !c.trivial
            });
            assert!(degenerate_hit, "{source} #{ci}");
        }
    }
}

#[test]
fn idoodle_columns() {
    let expect = [
        (2, vec![(-1, 1), (-2, 1)]),
        (3, vec![(-1, 1), (-2, 1)]),
        (4, vec![(-1, 5), (-2, 5)]),
    ];
    for (p, groups) in expect {
        let r = auxiliary_column(p, 3, Context::Idoodle, Ring::Z).unwrap();
        let got: Vec<(i64, usize)> = r
            .groups
            .iter()
            .map(|g| (g.degree, g.group.free_rank))
            .collect();
        assert_eq!(got, groups, "p={p}");
        assert!(r.cross_group_d1.iter().all(|c| c.trivial));
    }
}

#[test]
fn fourfold_columns() {
    let want = [(Ring::Z, [0, 0, 2]), (Z2, [1, 0, 2]), (Z5, [0, 1, 2])];
    for (ring, ranks) in want {
        for (p, n) in (3..=5).zip(ranks) {
            let g = auxiliary_column(p, 4, Context::Fourfold, ring)
                .unwrap()
                .group_at(-2);
            assert_eq!(g.free_rank, n, "p={p} {ring:?}");
            assert!(g.torsion.is_empty() || ring != Ring::Z);
        }
    }
}

#[test]
fn censuses() {
    let d = census(Context::Doodle, 4, Ring::Z).unwrap();
    assert_eq!(d.counts(), vec![0, 0, 0, 1]);
    assert!(!d.assumptions.is_empty());
    let i = census(Context::Idoodle, 4, Ring::Z).unwrap();
    assert_eq!(i.counts(), vec![0, 1, 1, 5]);
    let f = census(Context::Fourfold, 5, Z5).unwrap();
    assert_eq!(&f.counts()[2..], &[0, 1, 2]);
}

#[test]
fn context_names() {
    for (s, c) in [
        ("doodle", Context::Doodle),
        ("idoodle-invariants", Context::Idoodle),
        ("fourfold-h1", Context::Fourfold),
    ] {
        assert_eq!(s.parse::<Context>().unwrap(), c);
    }
    assert!("knots".parse::<Context>().is_err());
    assert_eq!(
        serde_json::to_string(&Context::Idoodle).unwrap(),
        "\"idoodle\""
    );
}

#[test]
fn d1_squares_to_zero_on_top_classes() {
    for (ctx, p) in [
        (Context::Doodle, 3),
        (Context::Doodle, 4),
        (Context::Idoodle, 4),
        (Context::Fourfold, 5),
    ] {
        let cx = column_complex(p, ctx).unwrap();
        assert!(
            d1_square_checks(&cx).iter().all(|c| c.trivial),
            "{ctx} p={p}"
        );
    }
    let cx = column_complex(4, Context::Doodle).unwrap();
    assert!(!cx.square_defects().is_empty());
    assert!(cx.square_defects().iter().all(|&d| d <= -1));
}
