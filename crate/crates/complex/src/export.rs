use doodle_homology::{BigInt, SparseMatrix};
use serde::Serialize;

use crate::poset::Poset;
use crate::relative::OrderComplex;

#[derive(Clone, Debug, Serialize)]
pub struct VertexJson {
    pub index: usize,
    pub element: String,
    pub codim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetJson {
    pub class: String,
    pub vertices: Vec<VertexJson>,
    /// Covering pairs `(lower, upper)`.
    pub order: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, value)` for nonzero entries.
    pub entries: Vec<(usize, usize, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexJson {
    pub class: String,
    pub poset: PosetJson,
    /// Simplices by dimension, as vertex index lists (bottom first).
    pub simplices: Vec<Vec<Vec<usize>>>,
    /// `boundaries[d]`: ∂ from dimension d to d − 1, for d ≥ 1.
    pub boundaries: Vec<MatrixJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainJson {
    pub dim: usize,
    /// `(simplex, coefficient)` for nonzero coefficients.
    pub terms: Vec<(String, String)>,
}

pub fn matrix_json(m: &SparseMatrix) -> MatrixJson {
    let mut entries = Vec::new();
    for j in 0..m.cols() {
        for (&i, v) in m.column(j) {
            entries.push((i, j, v.to_string()));
        }
    }
    MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries,
    }
}

pub fn poset_json(p: &Poset) -> PosetJson {
    let vertices = p
        .elements()
        .iter()
        .enumerate()
        .map(|(index, e)| VertexJson {
            index,
            element: e.encode(),
            codim: e.codim(),
        })
        .collect();
    let mut order = Vec::new();
    for j in 0..p.len() {
        let below = p.strictly_below(j);
        for &i in below {
            // covering: nothing strictly in between
            if !below.iter().any(|&m| p.strictly_below(m).contains(&i)) {
                order.push((i, j));
            }
        }
    }
    PosetJson {
        class: p.class().to_string(),
        vertices,
        order,
    }
}

pub fn complex_json(c: &OrderComplex) -> ComplexJson {
    ComplexJson {
        class: c.class().to_string(),
        poset: poset_json(c.poset()),
        simplices: (0..=c.dim()).map(|d| c.simplices(d).to_vec()).collect(),
        boundaries: (1..=c.dim()).map(|d| matrix_json(c.boundary(d))).collect(),
    }
}

pub fn chain_json(c: &OrderComplex, dim: usize, chain: &[BigInt]) -> ChainJson {
    let terms = c
        .simplices(dim)
        .iter()
        .zip(chain)
        .filter(|(_, x)| **x != BigInt::from(0))
        .map(|(s, x)| (c.describe(s), x.to_string()))
        .collect();
    ChainJson { dim, terms }
}
