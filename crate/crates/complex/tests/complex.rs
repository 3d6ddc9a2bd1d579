use doodle_cliques::{enumerate_classes, hypergraph_connected, CliqueClass, MultFilter};
use doodle_complex::*;
use doodle_homology::{is_cycle, kernel_basis, BigInt, GroupPresentation, Ring};

fn cls(s: &str) -> CliqueClass {
    s.parse().unwrap()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn top(s: &str) -> GroupPresentation {
    relative_complex(&cls(s)).top_homology(Ring::Z).unwrap()
}

#[test]
fn poset_sizes() {
    let five = build_poset(&cls("aaaaa"));
    assert_eq!(five.len(), 16);
    let codims: Vec<usize> = five.elements().iter().map(|e| e.codim()).collect();
    assert_eq!(codims.iter().filter(|&&c| c == 4).count(), 10);
    assert_eq!(codims.iter().filter(|&&c| c == 6).count(), 5);
    let six = build_poset(&cls("aaaaaa"));
    assert_eq!(six.len(), 52);
    assert_eq!(
        six.elements()
            .iter()
            .filter(|e| e.components.len() == 2)
            .count(),
        10
    );
    assert_eq!(build_poset(&cls("aaabbb")).len(), 3);
}

#[test]
fn double_point_triangle() {
    // (x,x,y,z): three rays from χ
    let p = build_poset(&cls("aaa2"));
    let names: Vec<String> = p.elements().iter().map(|e| e.encode()).collect();
    assert_eq!(names, ["0.1.2", "0.2^2", "1.2^2", "0.1.2^2"]);
    assert_eq!(p.len(), 4);
    assert_eq!(p.atoms().len(), 3);
    assert_eq!(top("aaa2"), GroupPresentation::free(2));
}

#[test]
fn stars_and_intervals() {
    assert_eq!(top("aaaa"), GroupPresentation::free(3));
    assert_eq!(top("aa3"), GroupPresentation::free(1));
    assert_eq!(top("a2a2"), GroupPresentation::free(1));
    assert_eq!(top("aaabbb"), GroupPresentation::free(1));
    assert_eq!(top("ababab"), GroupPresentation::free(1));
    assert_eq!(top("aaaa2"), GroupPresentation::free(3));
    assert_eq!(top("aaaaa:4"), GroupPresentation::free(4));
}

#[test]
fn five_points() {
    let c = relative_complex(&cls("aaaaa"));
    assert_eq!(c.dim(), 2);
    assert_eq!(c.simplices(2).len(), 20);
    let h = c.homology(Ring::Z).unwrap();
    let nonzero: Vec<(i64, GroupPresentation)> =
        h.into_iter().filter(|(_, g)| !g.is_zero()).collect();
    assert_eq!(nonzero, vec![(2, GroupPresentation::free(6))]);
}

#[test]
fn star_rank_is_atoms_minus_one() {
    for s in ["aaaa", "aaa2", "aa3", "a2a2", "aaaaa:4"] {
        let c = relative_complex(&cls(s));
        let r = c.poset().atoms().len();
        assert_eq!(c.dim(), 1, "{s}");
        assert_eq!(
            c.top_homology(Ring::Z).unwrap(),
            GroupPresentation::free(r - 1),
            "{s}"
        );
    }
}

#[test]
fn dimension_formula_and_complexes() {
    for c in enumerate_classes(3, 5, MultFilter::all()) {
        let oc = relative_complex(&c);
        let a = c.point_count();
        let m = c.group_count();
        assert_eq!(oc.dim(), a - 2 * m - 1, "{c}");
        oc.chain_complex().check().unwrap();
    }
}

#[test]
fn relative_faces_are_connected_hypergraphs() {
    // a chain reaches χ exactly when, per group, its top element's
    // components form one connected hypergraph covering the group
    for c in enumerate_classes(3, 5, MultFilter::configurations()) {
        let p = build_poset(&c);
        for (i, e) in p.elements().iter().enumerate() {
            let connected = (0..c.group_count()).all(|g| {
                let pts: Vec<usize> = (0..c.rho()).filter(|&s| c.slots()[s].group == g).collect();
                let edges: Vec<Vec<usize>> = e
                    .components
                    .iter()
                    .filter(|comp| comp.group == g)
                    .map(|comp| {
                        comp.support()
                            .map(|s| pts.iter().position(|&q| q == s).unwrap())
                            .collect()
                    })
                    .collect();
                hypergraph_connected(pts.len(), &edges)
            });
            assert_eq!(connected, i == p.top(), "{c} {e}");
        }
    }
}

#[test]
fn arity_four_six_points() {
    let c = relative_complex(&cls("aaaaaa:4"));
    let p = c.poset();
    assert_eq!(p.elements().iter().filter(|e| e.codim() == 6).count(), 15);
    assert_eq!(p.elements().iter().filter(|e| e.codim() == 8).count(), 6);
    assert_eq!(c.simplices(2).len(), 30);
    assert_eq!(
        c.top_homology(Ring::Z).unwrap(),
        GroupPresentation::free(10)
    );
}

#[test]
fn graph_encoding() {
    for n in [5, 6] {
        let g = graph_cycle_encoding(n).unwrap();
        assert_eq!(g.arrows.len(), n * (n - 1));
        assert_eq!(
            g.top_homology(Ring::Z).unwrap(),
            GroupPresentation::free(g.graph_cycle_rank())
        );
        // ∂(arrow) = edge − head
        let b = g.complex.boundary(2);
        for a in &g.arrows {
            let d = b.apply(&g.arrow_chain(a.tail, a.head));
            let mut want = vec![BigInt::from(0); d.len()];
            want[g.edge_index(a.tail, a.head).unwrap()] += 1;
            want[g.point_index(a.head).unwrap()] -= 1;
            assert_eq!(d, want);
        }
        // a triangle of double arrows is a cycle, a single one is not
        let tri = g.from_graph_chain(&[(0, 1, 1), (1, 2, 1), (2, 0, 1)]);
        assert!(is_cycle(b, &tri));
        assert!(!is_cycle(b, &g.double_arrow(0, 1)));
        assert_eq!(g.arrows_of(&tri).len(), 6);
    }
    assert!(graph_cycle_encoding(4).is_err());
    assert_eq!(graph_cycle_encoding(5).unwrap().graph_cycle_rank(), 6);
    assert_eq!(graph_cycle_encoding(6).unwrap().graph_cycle_rank(), 10);
}

#[test]
fn collisions_change_rho_by_one() {
    for c in enumerate_classes(3, 4, MultFilter::all()) {
        for col in collisions(&c) {
            assert_eq!(col.target.rho() + 1, c.rho());
            assert_eq!(col.target.complexity(), c.complexity());
        }
    }
    assert!(collide(&cls("aa3"), 0).is_err());
    assert!(collide(&cls("aaaa:4"), 0).is_err());
    assert!(collide(&cls("aaaabbbb:4"), 3).is_ok());
}

#[test]
fn collision_is_a_chain_map() {
    let cache = ComplexCache::new();
    for c in enumerate_classes(3, 5, MultFilter::all()) {
        let src = cache.get(&c);
        for col in collisions(&c) {
            let tgt = cache.get(&col.target);
            for d in 1..=src.dim() {
                let f_hi = col.chain_map(&src, &tgt, d);
                let f_lo = col.chain_map(&src, &tgt, d - 1);
                let lhs = tgt.boundary(d).mul(&f_hi);
                let rhs = f_lo.mul(src.boundary(d));
                assert_eq!(lhs.to_dense(), rhs.to_dense(), "{c} site {}", col.site);
            }
        }
    }
}

#[test]
fn cross_goes_to_three_star() {
    let src = relative_complex(&cls("aaaa"));
    let col = collide(&cls("aaaa"), 0).unwrap();
    assert_eq!(col.target.to_string(), "aaa2");
    let tgt = relative_complex(&col.target);
    let z = kernel_basis(&src.boundary(1).to_dense());
    let mut seen_nonzero = 0;
    for v in z {
        let img = col.apply(&src, &tgt, 1, &v);
        assert!(is_cycle(tgt.boundary(1), &img));
        let support = img.iter().filter(|x| **x != BigInt::from(0)).count();
        assert!(support == 0 || support == 2);
        seen_nonzero += (support == 2) as usize;
    }
    assert!(seen_nonzero > 0);
}

#[test]
fn alternating_sites_cancel() {
    // the generator of ◊(ababab) pushed into ◊((5)) along the first five sites
    let c = cls("ababab");
    let src = relative_complex(&c);
    let gen = kernel_basis(&src.boundary(1).to_dense()).remove(0);
    let five = relative_complex(&cls("aaaaa"));
    let mut total = vec![BigInt::from(0); five.simplices(1).len()];
    for site in 0..5 {
        let col = collide(&c, site).unwrap();
        assert!(!col.same_group);
        assert_eq!(col.target, cls("aaaaa"));
        let img = col.apply(&src, &five, 1, &gen);
        // a difference of two edges {t ⊂ χ}
        let nz: Vec<usize> = (0..img.len())
            .filter(|&i| img[i] != BigInt::from(0))
            .collect();
        assert_eq!(nz.len(), 2);
        assert!(nz
            .iter()
            .all(|&i| five.poset().elements()[five.simplices(1)[i][0]].codim() == 4));
        assert_eq!(&img[nz[0]] + &img[nz[1]], BigInt::from(0));
        let sign = if site % 2 == 0 { 1 } else { -1 };
        for (t, x) in total.iter_mut().zip(img) {
            *t += x * sign;
        }
    }
    assert!(total.iter().all(|x| *x == BigInt::from(0)));
}

#[test]
fn rotation_acts_on_fiber() {
    // rotating the cross by one slot permutes its four rays cyclically
    let c = relative_complex(&cls("aaaa"));
    let perm = [3usize, 0, 1, 2];
    let m = c.slot_action(&perm, 1).unwrap().to_dense();
    let mut p = m.clone();
    for _ in 0..3 {
        p = p.mul(&m);
    }
    assert_eq!(p, doodle_homology::IntMatrix::identity(4));
    assert!(c.slot_action(&perm, 0).is_some());
    // swapping groups of ababab
    let ab = relative_complex(&cls("ababab"));
    let shift: Vec<usize> = (0..6).map(|i| (i + 5) % 6).collect();
    let s = ab.slot_action(&shift, 1).unwrap().to_dense();
    assert_eq!(s.mul_vec(&big(&[1, -1])), big(&[-1, 1]));
}

#[test]
fn json_export() {
    let c = relative_complex(&cls("aaaa"));
    let j = serde_json::to_value(complex_json(&c)).unwrap();
    assert_eq!(j["poset"]["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(j["simplices"][1].as_array().unwrap().len(), 4);
    assert_eq!(j["boundaries"][0]["entries"].as_array().unwrap().len(), 4);
    let chain = chain_json(&c, 1, &big(&[1, -1, 0, 0]));
    assert_eq!(chain.terms.len(), 2);
    let text = serde_json::to_string(&poset_json(c.poset())).unwrap();
    assert!(text.contains("0.1.2.3"));
}
