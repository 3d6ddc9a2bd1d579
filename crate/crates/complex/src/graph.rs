//! The order complex of a single group of `n` points with arity `n − 2`,
//! read as the complete graph Kₙ.
//!
//! A top simplex `S ⊂ S' ⊂ χ` is drawn as an arrow `i → j`: `{i, j}` are the
//! two points missing from `S`, and `j` is the one missing from `S'`.
//! Vertices `S ⊂ χ` are undirected edges `{i, j}`, and `S' ⊂ χ` marked
//! points. With the standard incidence, ∂(simplex) = point − edge; an arrow is
//! taken to be the *negated* simplex, so that
//! ∂(arrow) = edge − arrowhead.

use doodle_cliques::CliqueClass;
use doodle_homology::{BigInt, GroupPresentation, HomologyError, Ring};
use serde::Serialize;

use crate::relative::{relative_complex, OrderComplex};
use crate::ComplexError;

#[derive(Clone, Debug, Serialize)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    /// Index among the relative 2-simplices.
    pub simplex: usize,
}

pub struct GraphEncoding {
    pub n: usize,
    pub complex: OrderComplex,
    /// Indexed like the 2-simplices.
    pub arrows: Vec<Arrow>,
    /// Undirected edge `(i, j)`, `i < j`, of each 1-simplex of the form `S ⊂ χ`.
    pub edges: Vec<Option<(usize, usize)>>,
    /// Marked point of each 1-simplex of the form `S' ⊂ χ`.
    pub points: Vec<Option<usize>>,
}

fn missing(mults: &[u8]) -> Vec<usize> {
    (0..mults.len()).filter(|&i| mults[i] == 0).collect()
}

pub fn graph_cycle_encoding(n: usize) -> Result<GraphEncoding, ComplexError> {
    if n != 5 && n != 6 {
        return Err(ComplexError::UnsupportedArity(n));
    }
    let class = CliqueClass::configuration(&vec![0; n], n - 2)
        .map_err(|_| ComplexError::UnsupportedArity(n))?;
    let complex = relative_complex(&class);
    let el = |v: usize| &complex.poset().elements()[v].components[0].mults;
    let mut edges = Vec::new();
    let mut points = Vec::new();
    for s in complex.simplices(1) {
        let m = missing(el(s[0]));
        match m.len() {
            2 => {
                edges.push(Some((m[0], m[1])));
                points.push(None);
            }
            1 => {
                edges.push(None);
                points.push(Some(m[0]));
            }
            _ => unreachable!("vertex of the wrong size"),
        }
    }
    let arrows = complex
        .simplices(2)
        .iter()
        .enumerate()
        .map(|(idx, s)| {
            let pair = missing(el(s[0]));
            let head = missing(el(s[1]))[0];
            let tail = if pair[0] == head { pair[1] } else { pair[0] };
            Arrow {
                tail,
                head,
                simplex: idx,
            }
        })
        .collect();
    Ok(GraphEncoding {
        n,
        complex,
        arrows,
        edges,
        points,
    })
}

impl GraphEncoding {
    pub fn arrow_index(&self, tail: usize, head: usize) -> Option<usize> {
        self.arrows
            .iter()
            .position(|a| a.tail == tail && a.head == head)
    }

    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.edges.iter().position(|e| *e == Some(key))
    }

    pub fn point_index(&self, i: usize) -> Option<usize> {
        self.points.iter().position(|p| *p == Some(i))
    }

    /// The relative 2-chain of a single arrow (the negated simplex).
    pub fn arrow_chain(&self, tail: usize, head: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::from(0); self.arrows.len()];
        if let Some(i) = self.arrow_index(tail, head) {
            v[i] = BigInt::from(-1);
        }
        v
    }

    /// `(i → j) − (j → i)`; its boundary is `i − j`.
    pub fn double_arrow(&self, i: usize, j: usize) -> Vec<BigInt> {
        let a = self.arrow_chain(i, j);
        let b = self.arrow_chain(j, i);
        a.into_iter().zip(b).map(|(x, y)| x - y).collect()
    }

    /// The 2-chain of a 1-chain on the edges of Kₙ, each oriented edge
    /// `(i, j, c)` contributing `c` double arrows from `i` to `j`.
    pub fn from_graph_chain(&self, edges: &[(usize, usize, i64)]) -> Vec<BigInt> {
        let mut v = vec![BigInt::from(0); self.arrows.len()];
        for &(i, j, c) in edges {
            for (x, y) in v.iter_mut().zip(self.double_arrow(i, j)) {
                *x += y * c;
            }
        }
        v
    }

    /// Reads an arrow combination back off a 2-chain.
    pub fn arrows_of(&self, chain: &[BigInt]) -> Vec<(usize, usize, BigInt)> {
        self.arrows
            .iter()
            .zip(chain)
            .filter(|(_, c)| *c != &BigInt::from(0))
            .map(|(a, c)| (a.tail, a.head, -c.clone()))
            .collect()
    }

    pub fn top_homology(&self, ring: Ring) -> Result<GroupPresentation, HomologyError> {
        self.complex.top_homology(ring)
    }

    /// Rank of the cycle space of Kₙ.
    pub fn graph_cycle_rank(&self) -> usize {
        self.n * (self.n - 1) / 2 - self.n + 1
    }
}
