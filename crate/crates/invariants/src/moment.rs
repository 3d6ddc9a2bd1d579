use std::collections::HashMap;
use std::sync::RwLock;

use doodle_diagram::{Basepoint, PlanarDiagram};

use crate::InvariantError;

/// `i(i−1)⋯(i−β+1)/β!`, for any integer `i`.
pub fn binom_falling(i: i64, beta: u32) -> i64 {
    let mut acc: i128 = 1;
    for k in 0..beta as i128 {
        // exact at every step: a product of k+1 consecutive integers is
        // divisible by (k+1)!
        acc = acc * (i as i128 - k) / (k + 1);
    }
    acc as i64
}

/// `Σ σ(x)·C(i(x), β) + 2·C(i(∗), β+1)` with the basepoint `∗` on `bp`.
pub fn moment(d: &PlanarDiagram, bp: Basepoint, beta: u32) -> Result<i64, InvariantError> {
    if beta == 0 {
        return Err(InvariantError::BadBeta);
    }
    let mut sum = 2 * binom_falling(d.basepoint_index(bp)?, beta + 1);
    for x in 0..d.crossing_count() {
        sum += d.crossing_sign(bp, x)? as i64 * binom_falling(d.crossing_index(x)?, beta);
    }
    Ok(sum)
}

/// The moment at every arc as basepoint.
pub fn moment_at_all_basepoints(d: &PlanarDiagram, beta: u32) -> Result<Vec<i64>, InvariantError> {
    (0..d.arc_count())
        .map(|a| moment(d, Basepoint::on_arc(a), beta))
        .collect()
}

/// M(1).
pub fn strangeness(d: &PlanarDiagram) -> Result<i64, InvariantError> {
    moment(d, Basepoint::on_arc(0), 1)
}

/// An integer function on regular diagrams.
pub trait Evaluator: Send + Sync {
    fn name(&self) -> String;
    /// Order the function is claimed to have, if any.
    fn claimed_order(&self) -> Option<usize>;
    fn evaluate(&self, d: &PlanarDiagram) -> Result<i64, InvariantError>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Moment {
    pub beta: u32,
}

impl Evaluator for Moment {
    fn name(&self) -> String {
        format!("M({})", self.beta)
    }

    fn claimed_order(&self) -> Option<usize> {
        Some(self.beta as usize + 1)
    }

    fn evaluate(&self, d: &PlanarDiagram) -> Result<i64, InvariantError> {
        moment(d, Basepoint::on_arc(0), self.beta)
    }
}

/// Caches an evaluator on canonical diagram keys; shareable across threads.
pub struct Memoized<E> {
    inner: E,
    memo: RwLock<HashMap<Vec<u32>, i64>>,
}

impl<E: Evaluator> Memoized<E> {
    pub fn new(inner: E) -> Self {
        Memoized {
            inner,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn cached(&self) -> usize {
        self.memo.read().expect("memo poisoned").len()
    }
}

impl<E: Evaluator> Evaluator for Memoized<E> {
    fn name(&self) -> String {
        self.inner.name()
    }

    fn claimed_order(&self) -> Option<usize> {
        self.inner.claimed_order()
    }

    fn evaluate(&self, d: &PlanarDiagram) -> Result<i64, InvariantError> {
        let key = d.canonical_key();
        if let Some(&v) = self.memo.read().expect("memo poisoned").get(&key) {
            return Ok(v);
        }
        let v = self.inner.evaluate(d)?;
        self.memo.write().expect("memo poisoned").insert(key, v);
        Ok(v)
    }
}
