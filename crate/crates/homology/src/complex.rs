use num_bigint::BigInt;
use num_traits::Zero;

use crate::group::{GroupPresentation, Ring};
use crate::matrix::{IntMatrix, SparseMatrix};
use crate::snf::{invariant_factors, rank_mod_p};

#[derive(Debug, thiserror::Error)]
pub enum HomologyError {
    #[error("consecutive boundaries do not compose to zero (at degree {degree})")]
    NotAComplex { degree: i64 },
    #[error("boundary dimensions do not chain: {0}")]
    Shape(String),
}

/// A finite chain complex with integer coefficients, concentrated in degrees
/// `min_degree ..= min_degree + dims.len() - 1`.
///
/// `boundary[k]` is ∂ from degree `min_degree + k` to `min_degree + k - 1`
/// (rows = dims[k-1], or 0 rows for k = 0).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub min_degree: i64,
    pub dims: Vec<usize>,
    pub boundary: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn new(min_degree: i64, dims: Vec<usize>) -> Self {
        let boundary = dims
            .iter()
            .enumerate()
            .map(|(k, &d)| SparseMatrix::new(if k == 0 { 0 } else { dims[k - 1] }, d))
            .collect();
        ChainComplex {
            min_degree,
            dims,
            boundary,
        }
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.index(degree).map_or(0, |k| self.dims[k])
    }

    fn index(&self, degree: i64) -> Option<usize> {
        let k = degree - self.min_degree;
        (k >= 0 && (k as usize) < self.dims.len()).then_some(k as usize)
    }

    /// ∂ out of `degree`, if that degree is present.
    pub fn boundary_at(&self, degree: i64) -> Option<&SparseMatrix> {
        self.index(degree).map(|k| &self.boundary[k])
    }

    pub fn check(&self) -> Result<(), HomologyError> {
        for k in 0..self.dims.len() {
            let b = &self.boundary[k];
            let want_rows = if k == 0 { 0 } else { self.dims[k - 1] };
            if b.cols() != self.dims[k] || b.rows() != want_rows {
                return Err(HomologyError::Shape(format!(
                    "degree {} has a {}x{} boundary, expected {}x{}",
                    self.min_degree + k as i64,
                    b.rows(),
                    b.cols(),
                    want_rows,
                    self.dims[k]
                )));
            }
            if k >= 1 && !self.boundary[k - 1].mul(b).is_zero() {
                return Err(HomologyError::NotAComplex {
                    degree: self.min_degree + k as i64,
                });
            }
        }
        Ok(())
    }

    /// Homology in every degree, lowest first.
    pub fn homology(&self, ring: Ring) -> Result<Vec<(i64, GroupPresentation)>, HomologyError> {
        self.check()?;
        let n = self.dims.len();
        let mut ranks = Vec::with_capacity(n);
        let mut factors = Vec::with_capacity(n);
        for b in &self.boundary {
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
        Ok((0..n)
            .map(|k| {
                let out_rank = ranks[k];
                let in_rank = if k + 1 < n { ranks[k + 1] } else { 0 };
                let free = self.dims[k] - out_rank - in_rank;
                let torsion = if k + 1 < n {
                    factors[k + 1].clone()
                } else {
                    Vec::new()
                };
                (
                    self.min_degree + k as i64,
                    GroupPresentation::from_factors(free, torsion),
                )
            })
            .collect())
    }

    /// Homology in a single degree.
    pub fn homology_at(&self, degree: i64, ring: Ring) -> Result<GroupPresentation, HomologyError> {
        let all = self.homology(ring)?;
        Ok(all
            .into_iter()
            .find(|(d, _)| *d == degree)
            .map(|(_, g)| g)
            .unwrap_or_default())
    }

    /// Keeps only the listed basis elements in each degree (a subquotient
    /// when the kept set is the difference of two subcomplexes).
    pub fn restrict(&self, keep: impl Fn(i64, usize) -> bool) -> (ChainComplex, Vec<Vec<usize>>) {
        let kept: Vec<Vec<usize>> = (0..self.dims.len())
            .map(|k| {
                (0..self.dims[k])
                    .filter(|&i| keep(self.min_degree + k as i64, i))
                    .collect()
            })
            .collect();
        let dims = kept.iter().map(Vec::len).collect();
        let boundary = (0..self.dims.len())
            .map(|k| {
                let rows: &[usize] = if k == 0 { &[] } else { &kept[k - 1] };
                self.boundary[k].submatrix(rows, &kept[k])
            })
            .collect();
        (
            ChainComplex {
                min_degree: self.min_degree,
                dims,
                boundary,
            },
            kept,
        )
    }
}

/// Homology of the complex given by boundary matrices ∂₁, ∂₂, … where ∂ᵢ maps
/// Cᵢ → Cᵢ₋₁. Returns H₀, H₁, …, H_n.
pub fn chain_homology(
    boundaries: &[IntMatrix],
    ring: Ring,
) -> Result<Vec<GroupPresentation>, HomologyError> {
    if boundaries.is_empty() {
        return Ok(Vec::new());
    }
    let mut dims = vec![boundaries[0].rows()];
    for (i, b) in boundaries.iter().enumerate() {
        if b.rows() != dims[i] {
            return Err(HomologyError::Shape(format!(
                "∂{} has {} rows but C{} has dimension {}",
                i + 1,
                b.rows(),
                i,
                dims[i]
            )));
        }
        dims.push(b.cols());
    }
    let mut cx = ChainComplex::new(0, dims);
    for (i, b) in boundaries.iter().enumerate() {
        cx.boundary[i + 1] = b.to_sparse();
    }
    Ok(cx.homology(ring)?.into_iter().map(|(_, g)| g).collect())
}

/// Is the integer vector a cycle of ∂?
pub fn is_cycle(boundary: &SparseMatrix, v: &[BigInt]) -> bool {
    boundary.apply(v).iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle() {
        let h = chain_homology(&[IntMatrix::zeros(1, 1)], Ring::Z).unwrap();
        assert_eq!(
            h,
            vec![GroupPresentation::free(1), GroupPresentation::free(1)]
        );
    }

    #[test]
    fn projective_plane_torsion() {
        // minimal cell structure of ℝP²: ∂₁ = 0, ∂₂ = 2
        let h = chain_homology(
            &[IntMatrix::zeros(1, 1), IntMatrix::from_rows(&[[2]])],
            Ring::Z,
        )
        .unwrap();
        assert_eq!(h[1], GroupPresentation::from_factors(0, [BigInt::from(2)]));
        assert!(h[2].is_zero());
        let h2 = chain_homology(
            &[IntMatrix::zeros(1, 1), IntMatrix::from_rows(&[[2]])],
            Ring::Zp(2),
        )
        .unwrap();
        assert_eq!(h2[1], GroupPresentation::free(1));
        assert_eq!(h2[2], GroupPresentation::free(1));
    }

    #[test]
    fn not_a_complex() {
        let d1 = IntMatrix::from_rows(&[[1]]);
        let d2 = IntMatrix::from_rows(&[[1]]);
        assert!(matches!(
            chain_homology(&[d1, d2], Ring::Z),
            Err(HomologyError::NotAComplex { .. })
        ));
    }
}
