use std::sync::Arc;

use serde::Serialize;

use doodle_cliques::CliqueClass;
use doodle_complex::{relative_complex, OrderComplex};
use doodle_homology::{
    cokernel_part, equivariant_part, induced_action, kernel_basis, BigInt, GroupPresentation,
    IntMatrix, Ring,
};

use crate::BlocksError;

/// One stratum of the resolved discriminant: cliques of a single class,
/// each carrying the relative order complex of its subspace poset.
#[derive(Clone, Debug)]
pub struct BlockDescriptor {
    pub class: CliqueClass,
    /// Dimension of the space of cliques (geometrically distinct points).
    pub rho: usize,
    pub epsilon_base: i32,
    pub fiber: Arc<OrderComplex>,
    /// Columns: a basis of the fiber's top relative cycles.
    pub fiber_basis: IntMatrix,
    /// The minimal class-preserving rotation acting on `fiber_basis`.
    pub rho_fiber: IntMatrix,
    /// Minus the codimension of the vector-bundle factor's complement; all
    /// degrees are relative to the ambient dimension.
    pub degree_offset: i64,
}

/// Slot relabeling of a rotation by `shift` slots: slot `i` goes to `i − shift`.
pub fn rotation_perm(rho: usize, shift: usize) -> Vec<usize> {
    (0..rho).map(|i| (i + rho - shift % rho) % rho).collect()
}

pub fn block(class: &CliqueClass) -> Result<BlockDescriptor, BlocksError> {
    block_with(class, Arc::new(relative_complex(class)))
}

pub(crate) fn block_with(
    class: &CliqueClass,
    fiber: Arc<OrderComplex>,
) -> Result<BlockDescriptor, BlocksError> {
    let d = fiber.dim();
    let n = fiber.simplices(d).len();
    let fiber_basis = if d == 0 {
        IntMatrix::identity(n)
    } else {
        let cycles = kernel_basis(&fiber.boundary(d).to_dense());
        IntMatrix::from_columns(n, &cycles)
    };
    let perm = rotation_perm(class.rho(), class.symmetry_shift());
    let on_chains = fiber
        .slot_action(&perm, d)
        .ok_or_else(|| {
            BlocksError::Inconsistent(format!("rotation does not preserve the poset of {class}"))
        })?
        .to_dense();
    let rho_fiber = if fiber_basis.cols() == 0 {
        IntMatrix::zeros(0, 0)
    } else {
        induced_action(&on_chains, &fiber_basis).ok_or_else(|| {
            BlocksError::Inconsistent(format!("rotation does not preserve the cycles of {class}"))
        })?
    };
    Ok(BlockDescriptor {
        class: class.clone(),
        rho: class.rho(),
        epsilon_base: class.epsilon_base(),
        fiber,
        fiber_basis,
        rho_fiber,
        degree_offset: -(class.codim() as i64),
    })
}

impl BlockDescriptor {
    pub fn fiber_dim(&self) -> usize {
        self.fiber.dim()
    }

    /// Relative degree of the top Borel–Moore class of the block.
    pub fn top_degree(&self) -> i64 {
        (self.rho + self.fiber_dim()) as i64 + self.degree_offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockHomology {
    pub class: String,
    pub top_degree: i64,
    pub top: GroupPresentation,
    pub second: GroupPresentation,
    /// Nonzero fiber homology below the top dimension, by fiber dimension;
    /// not folded into `top`/`second`.
    pub lower_fiber: Vec<(i64, GroupPresentation)>,
}

/// Wang sequence of the block over its base circle: the top group is
/// ker(ρ_fiber − ε_base), the next one coker(ρ_fiber − ε_base).
pub fn block_top_homology(b: &BlockDescriptor, ring: Ring) -> Result<BlockHomology, BlocksError> {
    let eps = b.epsilon_base as i64;
    let (top, second) = if b.rho_fiber.rows() == 0 {
        (GroupPresentation::zero(), GroupPresentation::zero())
    } else {
        (
            equivariant_part(&b.rho_fiber, eps, ring).0,
            cokernel_part(&b.rho_fiber, eps, ring),
        )
    };
    let lower_fiber = b
        .fiber
        .homology(ring)?
        .into_iter()
        .filter(|(d, g)| *d < b.fiber_dim() as i64 && !g.is_zero())
        .collect();
    Ok(BlockHomology {
        class: b.class.to_string(),
        top_degree: b.top_degree(),
        top,
        second,
        lower_fiber,
    })
}

/// The ε-equivariant top fiber cycles, as chains on the fiber's top simplices.
pub fn equivariant_cycles(b: &BlockDescriptor) -> Vec<Vec<BigInt>> {
    if b.rho_fiber.rows() == 0 {
        return Vec::new();
    }
    let (_, coords) = equivariant_part(&b.rho_fiber, b.epsilon_base as i64, Ring::Z);
    coords.iter().map(|c| b.fiber_basis.mul_vec(c)).collect()
}
