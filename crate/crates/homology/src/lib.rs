//! Exact linear algebra over ℤ and ℤ/p for homology computations.
//!
//! Everything is arbitrary precision. Boundary matrices are kept sparse and
//! reduced by unit pivots before any dense Smith normal form is attempted.

mod complex;
mod equivariant;
mod group;
mod matrix;
mod snf;

pub use complex::{chain_homology, is_cycle, ChainComplex, HomologyError};
pub use equivariant::{
    cokernel, cokernel_part, cyclic_permutation, equivariant_part, induced_action,
    signed_permutation,
};
pub use group::{GroupPresentation, Ring, RingParseError};
pub use matrix::{IntMatrix, SparseMatrix};
pub use num_bigint::BigInt;
pub use snf::{
    invariant_factors, kernel_basis, kernel_basis_mod_p, left_inverse, rank_mod_p, rank_z,
    smith_normal_form, Smith,
};
