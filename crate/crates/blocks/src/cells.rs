//! A cellular Borel–Moore model of one main-filtration column.
//!
//! The space of cliques of a class with ρ points and symmetry shift r is cut
//! along a fixed point 0 of the circle. Its open cells are
//!
//! * `T_j` (dim ρ): 0 lies strictly between slot j−1 and slot j, and the
//!   points read j, j+1, … as coordinates 0 < y₁ < ⋯ < y_ρ < 1;
//! * `P_j` (dim ρ−1): slot j sits at 0, the others read j+1, … as
//!   0 < y₁ < ⋯ < y_{ρ−1} < 1;
//!
//! with j taken modulo r, slots being relabeled by the rotation. Face i of an
//! n-cell is y_i = y_{i+1} (y₀ = 0, y_{n+1} = 1) with sign (−1)^{i+1}; faces
//! where two points meet are collisions into other blocks, the others glue
//! T to P inside the block. A generator is a cell times a relative simplex of
//! the fiber, with the product sign on the fiber boundary.

use std::collections::HashMap;

use serde::Serialize;

use doodle_cliques::CliqueClass;
use doodle_complex::collide;
use doodle_homology::{
    invariant_factors, kernel_basis, kernel_basis_mod_p, rank_mod_p, BigInt, ChainComplex,
    GroupPresentation, Ring, SparseMatrix,
};
use num_traits::Zero;

use crate::block::{rotation_perm, BlockDescriptor};
use crate::{BlocksError, Context};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CellKind {
    T,
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Generator {
    pub block: usize,
    pub kind: CellKind,
    pub start: usize,
    pub fiber_dim: usize,
    pub simplex: usize,
}

/// Which kind of face a boundary term comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FacePart {
    /// Inside one block.
    Internal,
    /// Two points of one group meet.
    Same,
    /// Points of two groups meet.
    Cross,
}

struct CollisionData {
    target: usize,
    same_group: bool,
    start_of: Vec<usize>,
    /// Per fiber dimension, the image simplex (or none when degenerate).
    simplex_map: Vec<Vec<Option<usize>>>,
}

struct BlockMaps {
    /// `[q][d][s]`: image of simplex `s` under the rotation by q·r slots.
    rotations: Vec<Vec<Vec<usize>>>,
    collisions: Vec<Option<CollisionData>>,
}

pub struct ColumnComplex {
    pub context: Context,
    pub blocks: Vec<BlockDescriptor>,
    pub min_degree: i64,
    /// Generators, grouped by degree index (degree − min_degree).
    pub generators: Vec<Vec<Generator>>,
    index: HashMap<Generator, usize>,
    pub complex: ChainComplex,
    internal: Vec<SparseMatrix>,
    same: Vec<SparseMatrix>,
    cross: Vec<SparseMatrix>,
}

fn single_image(m: &SparseMatrix, col: usize) -> Option<usize> {
    let c = m.column(col);
    debug_assert!(c.len() <= 1 && c.values().all(|v| *v == BigInt::from(1)));
    c.keys().next().copied()
}

fn sign(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

impl ColumnComplex {
    /// Assembles the column. ∂∘∂ is not checked here: see
    /// [`ColumnComplex::square_defects`].
    pub fn build(context: Context, blocks: Vec<BlockDescriptor>) -> Result<Self, BlocksError> {
        let by_class: HashMap<CliqueClass, usize> = blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (b.class.clone(), i))
            .collect();
        let mut maps = Vec::with_capacity(blocks.len());
        for b in &blocks {
            maps.push(block_maps(context, b, &blocks, &by_class)?);
        }

        let degree = |b: &BlockDescriptor, kind: CellKind, d: usize| -> i64 {
            let cell = if kind == CellKind::T {
                b.rho
            } else {
                b.rho - 1
            };
            (cell + d) as i64 + b.degree_offset
        };
        let mut all = Vec::new();
        for (bi, b) in blocks.iter().enumerate() {
            for kind in [CellKind::T, CellKind::P] {
                for start in 0..b.class.symmetry_shift() {
                    for d in 0..=b.fiber.dim() {
                        for s in 0..b.fiber.simplices(d).len() {
                            all.push((
                                degree(b, kind, d),
                                Generator {
                                    block: bi,
                                    kind,
                                    start,
                                    fiber_dim: d,
                                    simplex: s,
                                },
                            ));
                        }
                    }
                }
            }
        }
        let min_degree = all.iter().map(|g| g.0).min().unwrap_or(0);
        let max_degree = all.iter().map(|g| g.0).max().unwrap_or(-1);
        let levels = (max_degree - min_degree + 1).max(0) as usize;
        let mut generators = vec![Vec::new(); levels];
        for (deg, g) in all {
            generators[(deg - min_degree) as usize].push(g);
        }
        let mut index = HashMap::new();
        for level in &generators {
            for (i, g) in level.iter().enumerate() {
                index.insert(*g, i);
            }
        }
        let dims: Vec<usize> = generators.iter().map(Vec::len).collect();
        let empty = |k: usize| SparseMatrix::new(if k == 0 { 0 } else { dims[k - 1] }, dims[k]);
        let mut internal: Vec<SparseMatrix> = (0..levels).map(empty).collect();
        let mut same: Vec<SparseMatrix> = (0..levels).map(empty).collect();
        let mut cross: Vec<SparseMatrix> = (0..levels).map(empty).collect();

        for k in 1..levels {
            for (col, g) in generators[k].iter().enumerate() {
                for (target, coeff, part) in faces(g, &blocks, &maps) {
                    let row = index[&target];
                    let m = match part {
                        FacePart::Internal => &mut internal[k],
                        FacePart::Same => &mut same[k],
                        FacePart::Cross => &mut cross[k],
                    };
                    m.add_entry(row, col, BigInt::from(coeff));
                }
            }
        }
        let mut complex = ChainComplex::new(min_degree, dims);
        for k in 0..levels {
            let mut m = internal[k].clone();
            for part in [&same[k], &cross[k]] {
                for j in 0..part.cols() {
                    for (&i, v) in part.column(j) {
                        m.add_entry(i, j, v.clone());
                    }
                }
            }
            complex.boundary[k] = m;
        }
        Ok(ColumnComplex {
            context,
            blocks,
            min_degree,
            generators,
            index,
            complex,
            internal,
            same,
            cross,
        })
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.generators.len() as i64 - 1
    }

    fn level(&self, degree: i64) -> Option<usize> {
        let k = degree - self.min_degree;
        (k >= 0 && (k as usize) < self.generators.len()).then_some(k as usize)
    }

    pub fn generators_at(&self, degree: i64) -> &[Generator] {
        self.level(degree).map_or(&[], |k| &self.generators[k])
    }

    pub fn generator_index(&self, g: &Generator) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn degree_of(&self, g: &Generator) -> i64 {
        let b = &self.blocks[g.block];
        let cell = if g.kind == CellKind::T {
            b.rho
        } else {
            b.rho - 1
        };
        (cell + g.fiber_dim) as i64 + b.degree_offset
    }

    pub fn block_index(&self, class: &CliqueClass) -> Option<usize> {
        self.blocks.iter().position(|b| &b.class == class)
    }

    /// Boundary of a chain of the given degree, restricted to one kind of face.
    pub fn boundary_part(
        &self,
        part: Option<FacePart>,
        degree: i64,
        chain: &[BigInt],
    ) -> Vec<BigInt> {
        let Some(k) = self.level(degree) else {
            return Vec::new();
        };
        let m = match part {
            None => &self.complex.boundary[k],
            Some(FacePart::Internal) => &self.internal[k],
            Some(FacePart::Same) => &self.same[k],
            Some(FacePart::Cross) => &self.cross[k],
        };
        m.apply(chain)
    }

    pub fn boundary(&self, degree: i64, chain: &[BigInt]) -> Vec<BigInt> {
        self.boundary_part(None, degree, chain)
    }

    /// Positions of one block's generators in a degree.
    pub fn block_positions(&self, block: usize, degree: i64) -> Vec<usize> {
        self.generators_at(degree)
            .iter()
            .enumerate()
            .filter(|(_, g)| g.block == block)
            .map(|(i, _)| i)
            .collect()
    }

    /// Keeps the given chain's coefficients on one block only.
    pub fn restrict_chain(&self, block: usize, degree: i64, chain: &[BigInt]) -> Vec<BigInt> {
        let gens = self.generators_at(degree);
        chain
            .iter()
            .zip(gens)
            .map(|(c, g)| {
                if g.block == block {
                    c.clone()
                } else {
                    BigInt::zero()
                }
            })
            .collect()
    }

    /// Blocks on which a chain has nonzero coefficients.
    pub fn support(&self, degree: i64, chain: &[BigInt]) -> Vec<usize> {
        let mut s: Vec<usize> = self
            .generators_at(degree)
            .iter()
            .zip(chain)
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, _)| g.block)
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// ℤ-basis of the cycles of one block in its own top degree (no cell of
    /// the block lies above it, so these are its top homology classes).
    pub fn block_cycles(&self, block: usize) -> Vec<Vec<BigInt>> {
        let deg = self.blocks[block].top_degree();
        let Some(k) = self.level(deg) else {
            return Vec::new();
        };
        let cols = self.block_positions(block, deg);
        let rows = if k == 0 {
            Vec::new()
        } else {
            self.block_positions(block, deg - 1)
        };
        let sub = self.internal[k].submatrix(&rows, &cols).to_dense();
        let basis = if rows.is_empty() {
            (0..cols.len())
                .map(|i| {
                    (0..cols.len())
                        .map(|j| BigInt::from((i == j) as i64))
                        .collect()
                })
                .collect()
        } else {
            kernel_basis(&sub)
        };
        basis
            .into_iter()
            .map(|v| {
                let mut full = vec![BigInt::zero(); self.generators[k].len()];
                for (c, &pos) in v.into_iter().zip(&cols) {
                    full[pos] = c;
                }
                full
            })
            .collect()
    }

    /// Degrees `d` with ∂_{d−1} ∘ ∂_d ≠ 0. Two collisions of points of
    /// different groups at two places make the groups share two points; the
    /// limit subspaces there are not those of any clique, so the two orders in
    /// which such a codimension-two face is reached land on different
    /// double-point cells. Only columns with coincident points are affected.
    pub fn square_defects(&self) -> Vec<i64> {
        (2..self.generators.len())
            .filter(|&k| {
                !self.complex.boundary[k - 1]
                    .mul(&self.complex.boundary[k])
                    .is_zero()
            })
            .map(|k| self.min_degree + k as i64)
            .collect()
    }

    /// Homology in every degree where both adjacent compositions vanish
    /// (`None` elsewhere), lowest first.
    pub fn homology(&self, ring: Ring) -> Vec<(i64, Option<GroupPresentation>)> {
        let defects = self.square_defects();
        let n = self.generators.len();
        let mut ranks = Vec::with_capacity(n);
        let mut factors = Vec::with_capacity(n);
        for b in &self.complex.boundary {
            match ring {
                Ring::Z => {
                    let f = invariant_factors(b);
                    ranks.push(f.len());
                    factors.push(f);
                }
                Ring::Zp(p) => {
                    ranks.push(rank_mod_p(b, p));
                    factors.push(Vec::new());
                }
            }
        }
        (0..n)
            .map(|k| {
                let deg = self.min_degree + k as i64;
                if defects.contains(&(deg + 1)) {
                    return (deg, None);
                }
                let incoming = if k + 1 < n { ranks[k + 1] } else { 0 };
                let torsion = if k + 1 < n {
                    factors[k + 1].clone()
                } else {
                    Vec::new()
                };
                let free = self.generators[k].len() - ranks[k] - incoming;
                (deg, Some(GroupPresentation::from_factors(free, torsion)))
            })
            .collect()
    }

    /// Is the chain (supported on `block`, in `degree`) a boundary of the
    /// block's own cells? Decided over ℤ by comparing lattice indices.
    pub fn is_block_boundary(&self, block: usize, degree: i64, chain: &[BigInt]) -> bool {
        let rows = self.block_positions(block, degree);
        let Some(k) = self.level(degree + 1) else {
            return chain.iter().all(Zero::is_zero);
        };
        let cols = self.block_positions(block, degree + 1);
        let b = self.internal[k].submatrix(&rows, &cols);
        let extra = b.cols();
        let mut with = SparseMatrix::new(b.rows(), extra + 1);
        for j in 0..extra {
            for (&i, v) in b.column(j) {
                with.add_entry(i, j, v.clone());
            }
        }
        for (r, &pos) in rows.iter().enumerate() {
            if !chain[pos].is_zero() {
                with.add_entry(r, extra, chain[pos].clone());
            }
        }
        let f0 = invariant_factors(&b);
        let f1 = invariant_factors(&with);
        let prod = |f: &[BigInt]| f.iter().fold(BigInt::from(1), |a, x| a * x);
        f0.len() == f1.len() && prod(&f0) == prod(&f1)
    }

    /// Is the union of these blocks closed under the boundary?
    pub fn is_subcomplex(&self, blocks: &[usize]) -> bool {
        (1..self.generators.len()).all(|k| {
            let m = &self.complex.boundary[k];
            self.generators[k].iter().enumerate().all(|(j, g)| {
                !blocks.contains(&g.block)
                    || m.column(j)
                        .keys()
                        .all(|&i| blocks.contains(&self.generators[k - 1][i].block))
            })
        })
    }

    /// The subquotient complex on the listed blocks.
    pub fn restricted(&self, blocks: &[usize]) -> ChainComplex {
        let gens = &self.generators;
        let min = self.min_degree;
        self.complex
            .restrict(|deg, i| blocks.contains(&gens[(deg - min) as usize][i].block))
            .0
    }

    /// Kernel of ∂ out of `degree` over the ring, as full chains.
    pub fn cycles(&self, degree: i64, ring: Ring) -> Vec<Vec<BigInt>> {
        let Some(k) = self.level(degree) else {
            return Vec::new();
        };
        let n = self.generators[k].len();
        if k == 0 {
            return (0..n)
                .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
                .collect();
        }
        let m = self.complex.boundary[k].to_dense();
        match ring {
            Ring::Z => kernel_basis(&m),
            Ring::Zp(p) => kernel_basis_mod_p(&m, p),
        }
    }

    /// Does anything bound into `degree`?
    pub fn has_incoming(&self, degree: i64) -> bool {
        self.level(degree + 1)
            .is_some_and(|k| !self.complex.boundary[k].is_zero())
    }

    pub fn describe(&self, g: &Generator) -> String {
        let b = &self.blocks[g.block];
        let cell = match g.kind {
            CellKind::T => "T",
            CellKind::P => "P",
        };
        let simplex = &b.fiber.simplices(g.fiber_dim)[g.simplex];
        format!(
            "{}·{}{}·{}",
            b.class,
            cell,
            g.start,
            b.fiber.describe(simplex)
        )
    }
}

fn block_maps(
    context: Context,
    b: &BlockDescriptor,
    blocks: &[BlockDescriptor],
    by_class: &HashMap<CliqueClass, usize>,
) -> Result<BlockMaps, BlocksError> {
    let rho = b.rho;
    let r = b.class.symmetry_shift();
    let fiber = &b.fiber;
    let mut rotations = Vec::new();
    for q in 0..rho / r {
        let perm = rotation_perm(rho, q * r);
        let mut per_dim = Vec::new();
        for d in 0..=fiber.dim() {
            let m = fiber.slot_action(&perm, d).ok_or_else(|| {
                BlocksError::Inconsistent(format!("rotation of {} by {}", b.class, q * r))
            })?;
            per_dim.push(
                (0..fiber.simplices(d).len())
                    .map(|s| single_image(&m, s).expect("rotations are bijective"))
                    .collect(),
            );
        }
        rotations.push(per_dim);
    }
    let mut collisions = Vec::new();
    for site in 0..rho {
        let col = match collide(&b.class, site) {
            Ok(c) if context.admits(&c.target) => c,
            _ => {
                collisions.push(None);
                continue;
            }
        };
        let target = *by_class.get(&col.target).ok_or_else(|| {
            BlocksError::Inconsistent(format!(
                "{} collides into {}, which is not in the column",
                b.class, col.target
            ))
        })?;
        let tf = &blocks[target].fiber;
        let simplex_map = (0..=fiber.dim())
            .map(|d| {
                if d > tf.dim() {
                    return vec![None; fiber.simplices(d).len()];
                }
                let m = col.chain_map(fiber, tf, d);
                (0..fiber.simplices(d).len())
                    .map(|s| single_image(&m, s))
                    .collect()
            })
            .collect();
        collisions.push(Some(CollisionData {
            target,
            same_group: col.same_group,
            start_of: col.slot_map.clone(),
            simplex_map,
        }));
    }
    Ok(BlockMaps {
        rotations,
        collisions,
    })
}

/// Generator of block `bi` for a cell starting at an arbitrary slot.
fn normalized(
    bi: usize,
    kind: CellKind,
    start: usize,
    d: usize,
    s: usize,
    blocks: &[BlockDescriptor],
    maps: &[BlockMaps],
) -> Generator {
    let r = blocks[bi].class.symmetry_shift();
    let (j, q) = (start % r, start / r);
    Generator {
        block: bi,
        kind,
        start: j,
        fiber_dim: d,
        simplex: maps[bi].rotations[q][d][s],
    }
}

fn faces(
    g: &Generator,
    blocks: &[BlockDescriptor],
    maps: &[BlockMaps],
) -> Vec<(Generator, i64, FacePart)> {
    let b = &blocks[g.block];
    let rho = b.rho;
    let (j, d, s) = (g.start, g.fiber_dim, g.simplex);
    let mut out = Vec::new();
    let cell_dim = match g.kind {
        CellKind::T => rho,
        CellKind::P => rho - 1,
    };
    let collide_into =
        |out: &mut Vec<(Generator, i64, FacePart)>, site: usize, kind: CellKind, sgn: i64| {
            let Some(c) = &maps[g.block].collisions[site] else {
                return;
            };
            let Some(img) = c.simplex_map[d][s] else {
                return;
            };
            let tgt = normalized(c.target, kind, c.start_of[j], d, img, blocks, maps);
            let part = if c.same_group {
                FacePart::Same
            } else {
                FacePart::Cross
            };
            out.push((tgt, sgn, part));
        };
    match g.kind {
        CellKind::T => {
            out.push((
                Generator {
                    kind: CellKind::P,
                    ..*g
                },
                -1,
                FacePart::Internal,
            ));
            let wrapped = normalized(
                g.block,
                CellKind::P,
                (j + rho - 1) % rho,
                d,
                s,
                blocks,
                maps,
            );
            out.push((wrapped, sign(rho + 1), FacePart::Internal));
            for i in 1..rho {
                collide_into(&mut out, (j + i - 1) % rho, CellKind::T, sign(i + 1));
            }
        }
        CellKind::P => {
            let n = rho - 1;
            if n >= 1 {
                for i in 0..=n {
                    collide_into(&mut out, (j + i) % rho, CellKind::P, sign(i + 1));
                }
            }
        }
    }
    if d > 0 {
        for (&row, c) in b.fiber.boundary(d).column(s) {
            let c: i64 = c.try_into().expect("unit coefficients");
            out.push((
                Generator {
                    fiber_dim: d - 1,
                    simplex: row,
                    ..*g
                },
                sign(cell_dim) * c,
                FacePart::Internal,
            ));
        }
    }
    out
}
