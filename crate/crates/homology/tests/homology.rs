use doodle_homology::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// ∂₁ of a graph: column per edge (tail, head) with −1 at the tail, +1 at the head.
fn graph_boundary(n: usize, edges: &[(usize, usize)]) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, edges.len());
    for (j, &(a, b)) in edges.iter().enumerate() {
        m.set(a, j, BigInt::from(-1));
        m.set(b, j, BigInt::from(1));
    }
    m
}

#[test]
fn complete_graph_k5_has_six_cycles() {
    let edges: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
        .collect();
    let h = chain_homology(&[graph_boundary(5, &edges)], Ring::Z).unwrap();
    assert_eq!(h[0], GroupPresentation::free(1));
    assert_eq!(h[1], GroupPresentation::free(6));
}

#[test]
fn open_star_with_five_rays() {
    // the reduced homology of five points joined to nothing: ℤ⁴
    let pts = IntMatrix::from_rows(&[[1, 1, 1, 1, 1]]);
    let h = chain_homology(&[pts], Ring::Z).unwrap();
    assert!(h[0].is_zero());
    assert_eq!(h[1], GroupPresentation::free(4));
}

#[test]
fn smith_examples() {
    let m = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    let s = smith_normal_form(&m);
    assert_eq!(
        s.diagonal(),
        vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
    );
    assert!(s.u.is_unimodular() && s.v.is_unimodular());
    assert_eq!(s.u.mul(&m).mul(&s.v), s.d);

    let t = IntMatrix::from_rows(&[[6, 0], [0, 4]]);
    assert_eq!(
        smith_normal_form(&t).diagonal(),
        vec![BigInt::from(2), BigInt::from(12)]
    );
}

#[test]
fn klein_bottle_over_z_and_z2() {
    // one vertex, edges a b, one face a b a⁻¹ b
    let d1 = IntMatrix::zeros(1, 2);
    let d2 = IntMatrix::from_rows(&[[0], [2]]);
    let h = chain_homology(&[d1.clone(), d2.clone()], Ring::Z).unwrap();
    assert_eq!(h[1], GroupPresentation::from_factors(1, [BigInt::from(2)]));
    assert!(h[2].is_zero());
    let h2 = chain_homology(&[d1, d2], Ring::Zp(2)).unwrap();
    assert_eq!(h2[1], GroupPresentation::free(2));
    assert_eq!(h2[2], GroupPresentation::free(1));
    let h3 = chain_homology(
        &[IntMatrix::zeros(1, 2), IntMatrix::from_rows(&[[0], [2]])],
        Ring::Zp(3),
    )
    .unwrap();
    assert_eq!(h3[1], GroupPresentation::free(1));
}

#[test]
fn graded_complex_and_restriction() {
    // a 2-simplex in degrees -2..=0
    let mut cx = ChainComplex::new(-2, vec![3, 3, 1]);
    let d1 = graph_boundary(3, &[(0, 1), (1, 2), (0, 2)]);
    cx.boundary[1] = d1.to_sparse();
    cx.boundary[2] = IntMatrix::from_rows(&[[1], [1], [-1]]).to_sparse();
    let h = cx.homology(Ring::Z).unwrap();
    assert_eq!(h[0], (-2, GroupPresentation::free(1)));
    assert!(h[1].1.is_zero() && h[2].1.is_zero());
    // dropping the 2-cell leaves a circle
    let (sub, kept) = cx.restrict(|d, _| d < 0);
    assert_eq!(kept[2], Vec::<usize>::new());
    assert_eq!(
        sub.homology_at(-1, Ring::Z).unwrap(),
        GroupPresentation::free(1)
    );
}

#[test]
fn kernels_are_saturated() {
    let m = IntMatrix::from_rows(&[[2, 4]]);
    let k = kernel_basis(&m);
    assert_eq!(k.len(), 1);
    let v = &k[0];
    // (2, -1) up to sign, not a multiple of it
    assert!(
        (v[0] == BigInt::from(2) && v[1] == BigInt::from(-1))
            || (v[0] == BigInt::from(-2) && v[1] == BigInt::from(1))
    );
    let b = IntMatrix::from_columns(2, &k);
    assert!(left_inverse(&b).is_some());
}

#[test]
fn sparse_and_dense_agree_on_torsion() {
    let m = IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6], [7, 8, 10]]);
    let f = invariant_factors(&m.to_sparse());
    assert_eq!(f, smith_normal_form(&m).diagonal());
    assert_eq!(rank_mod_p(&m.to_sparse(), 2), 3);
    assert_eq!(rank_mod_p(&m.to_sparse(), 3), 2);
}

#[test]
fn serialization_round_trip() {
    let g = GroupPresentation::from_factors(2, [BigInt::from(2), BigInt::from(10).pow(30)]);
    let s = serde_json::to_string(&g).unwrap();
    let back: GroupPresentation = serde_json::from_str(&s).unwrap();
    assert_eq!(g, back);
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-6i64..7, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
            IntMatrix::from_rows(&rows)
        })
    })
}

proptest! {
    #[test]
    fn smith_is_a_valid_decomposition(m in small_matrix()) {
        let s = smith_normal_form(&m);
        prop_assert!(s.u.is_unimodular());
        prop_assert!(s.v.is_unimodular());
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        let d = s.diagonal();
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        for x in &d {
            prop_assert!(*x >= BigInt::one());
        }
        prop_assert_eq!(invariant_factors(&m.to_sparse()), d);
    }

    #[test]
    fn kernel_vectors_vanish(m in small_matrix()) {
        for v in kernel_basis(&m) {
            prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(kernel_basis(&m).len(), m.cols() - smith_normal_form(&m).rank());
    }
}
