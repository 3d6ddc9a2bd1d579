use crate::group::{GroupPresentation, Ring};
use crate::matrix::IntMatrix;
use crate::snf::{kernel_basis, kernel_basis_mod_p, left_inverse, rank_mod_p, smith_normal_form};
use num_bigint::BigInt;

/// ρ − ε·id for a square ρ.
fn shifted(rho: &IntMatrix, eps: i64) -> IntMatrix {
    assert_eq!(rho.rows(), rho.cols(), "ρ must be square");
    rho.sub(&IntMatrix::identity(rho.rows()).scaled(&BigInt::from(eps)))
}

/// The subgroup ker(ρ − ε) of the lattice on which ρ acts, with a basis.
///
/// Over ℤ the basis is saturated (it spans the full solution lattice, not a
/// finite-index sublattice); over ℤₚ it is a basis of the solution space.
pub fn equivariant_part(
    rho: &IntMatrix,
    eps: i64,
    ring: Ring,
) -> (GroupPresentation, Vec<Vec<BigInt>>) {
    let m = shifted(rho, eps);
    let basis = match ring {
        Ring::Z => kernel_basis(&m),
        Ring::Zp(p) => kernel_basis_mod_p(&m, p),
    };
    (GroupPresentation::free(basis.len()), basis)
}

/// coker(ρ − ε) over the ring.
pub fn cokernel_part(rho: &IntMatrix, eps: i64, ring: Ring) -> GroupPresentation {
    cokernel(&shifted(rho, eps), ring)
}

/// Cokernel of an integer matrix viewed as a map ℤ^cols → ℤ^rows.
pub fn cokernel(m: &IntMatrix, ring: Ring) -> GroupPresentation {
    match ring {
        Ring::Z => {
            let d = smith_normal_form(m).diagonal();
            GroupPresentation::from_factors(m.rows() - d.len(), d)
        }
        Ring::Zp(p) => GroupPresentation::free(m.rows() - rank_mod_p(&m.to_sparse(), p)),
    }
}

/// Matrix of an ambient map `r` restricted to the saturated sublattice spanned
/// by the columns of `basis` (which `r` must preserve).
pub fn induced_action(r: &IntMatrix, basis: &IntMatrix) -> Option<IntMatrix> {
    let l = left_inverse(basis)?;
    let image = r.mul(basis);
    let induced = l.mul(&image);
    // exactness check: the image must lie in the span
    (basis.mul(&induced) == image).then_some(induced)
}

/// Matrix of a permutation with signs: column j has `sign[j]` in row `perm[j]`.
pub fn signed_permutation(perm: &[usize], sign: &[i64]) -> IntMatrix {
    let n = perm.len();
    let mut m = IntMatrix::zeros(n, n);
    for j in 0..n {
        m.set(perm[j], j, BigInt::from(sign[j]));
    }
    m
}

pub fn cyclic_permutation(n: usize) -> IntMatrix {
    let perm: Vec<usize> = (0..n).map(|j| (j + 1) % n).collect();
    signed_permutation(&perm, &vec![1; n])
}
