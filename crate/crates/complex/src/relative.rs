use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use doodle_cliques::CliqueClass;
use doodle_homology::{BigInt, ChainComplex, GroupPresentation, HomologyError, Ring, SparseMatrix};

use crate::poset::{build_poset, Poset};

/// A simplex of ◊(J): a strictly increasing chain, listed bottom first.
pub type Simplex = Vec<usize>;

/// The order complex of Π(J) modulo its marginal faces: only chains that
/// end at χ(J) are kept, and faces dropping χ(J) are discarded.
#[derive(Clone, Debug)]
pub struct OrderComplex {
    poset: Poset,
    simplices: Vec<Vec<Simplex>>,
    lookup: Vec<HashMap<Simplex, usize>>,
    complex: ChainComplex,
}

impl OrderComplex {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn class(&self) -> &CliqueClass {
        self.poset.class()
    }

    /// Top simplex dimension.
    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    /// Relative simplices of dimension `d`.
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        self.lookup.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    /// Chain complex in degrees `0..=dim`.
    pub fn chain_complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn boundary(&self, d: usize) -> &SparseMatrix {
        &self.complex.boundary[d]
    }

    pub fn homology(&self, ring: Ring) -> Result<Vec<(i64, GroupPresentation)>, HomologyError> {
        self.complex.homology(ring)
    }

    /// Relative homology in the top dimension.
    pub fn top_homology(&self, ring: Ring) -> Result<GroupPresentation, HomologyError> {
        self.complex.homology_at(self.dim() as i64, ring)
    }

    /// Boundary of a `d`-chain (coefficients indexed like `simplices(d)`).
    pub fn boundary_of(&self, d: usize, chain: &[BigInt]) -> Vec<BigInt> {
        self.complex.boundary[d].apply(chain)
    }

    pub fn describe(&self, s: &[usize]) -> String {
        let parts: Vec<String> = s
            .iter()
            .map(|&v| format!("({})", self.poset.elements()[v]))
            .collect();
        parts.join("<")
    }

    /// Action of a slot permutation (`perm[i]` = image of slot `i`) that is an
    /// automorphism of the class, on relative chains of dimension `d`.
    /// Returns `None` if it does not preserve the poset.
    pub fn slot_action(&self, perm: &[usize], d: usize) -> Option<SparseMatrix> {
        let map = crate::collision::permuted_elements(&self.poset, perm)?;
        let n = self.simplices(d).len();
        let mut m = SparseMatrix::new(n, n);
        for (j, s) in self.simplices(d).iter().enumerate() {
            let image: Simplex = s.iter().map(|&v| map[v]).collect();
            let i = self.simplex_index(&image)?;
            m.add_entry(i, j, BigInt::from(1));
        }
        Some(m)
    }
}

pub fn relative_complex(class: &CliqueClass) -> OrderComplex {
    let poset = build_poset(class);
    let top = poset.top();
    let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
    // grow chains downward from χ
    let mut stack: Vec<Simplex> = vec![vec![top]];
    while let Some(chain) = stack.pop() {
        let d = chain.len() - 1;
        if by_dim.len() <= d {
            by_dim.resize(d + 1, Vec::new());
        }
        let lowest = chain[0];
        for &v in poset.strictly_below(lowest) {
            let mut longer = Vec::with_capacity(chain.len() + 1);
            longer.push(v);
            longer.extend_from_slice(&chain);
            stack.push(longer);
        }
        by_dim[d].push(chain);
    }
    for v in by_dim.iter_mut() {
        v.sort();
    }
    let lookup: Vec<HashMap<Simplex, usize>> = by_dim
        .iter()
        .map(|v| v.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let dims: Vec<usize> = by_dim.iter().map(Vec::len).collect();
    let mut complex = ChainComplex::new(0, dims);
    for d in 1..by_dim.len() {
        let b = &mut complex.boundary[d];
        for (j, s) in by_dim[d].iter().enumerate() {
            // the last vertex is χ; dropping it leaves a marginal face
            for i in 0..d {
                let mut face = s.clone();
                face.remove(i);
                let row = lookup[d - 1][&face];
                let sign = if i % 2 == 0 { 1 } else { -1 };
                b.add_entry(row, j, BigInt::from(sign));
            }
        }
    }
    debug_assert!(complex.check().is_ok());
    OrderComplex {
        poset,
        simplices: by_dim,
        lookup,
        complex,
    }
}

/// Concurrently readable per-class cache of relative complexes.
#[derive(Default)]
pub struct ComplexCache {
    map: RwLock<HashMap<CliqueClass, Arc<OrderComplex>>>,
}

impl ComplexCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, class: &CliqueClass) -> Arc<OrderComplex> {
        if let Some(c) = self.map.read().expect("cache poisoned").get(class) {
            return c.clone();
        }
        let built = Arc::new(relative_complex(class));
        self.map
            .write()
            .expect("cache poisoned")
            .entry(class.clone())
            .or_insert(built)
            .clone()
    }
}
