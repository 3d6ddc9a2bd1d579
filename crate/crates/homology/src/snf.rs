use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{IntMatrix, SparseMatrix};

/// Smith decomposition `U · M · V = D`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries d₁ | d₂ | … (all positive).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Full Smith normal form with transforms. Pivoting always picks the entry of
/// smallest absolute value in the active block, which keeps intermediate
/// growth modest on the matrices seen here.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            // clear column t below the pivot
            let mut dirty = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = floor_quot(d.get(i, t), d.get(t, t));
                let nq = -q;
                d.add_row(i, t, &nq);
                u.add_row(i, t, &nq);
                if !d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = floor_quot(d.get(t, j), d.get(t, t));
                let nq = -q;
                d.add_col(j, t, &nq);
                v.add_col(j, t, &nq);
                if !d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder survived: move the smallest entry of row/col t to the pivot
                let mut best: Option<(usize, usize)> = None;
                let mut best_abs: Option<BigInt> = None;
                let mut consider = |i: usize, j: usize, val: &BigInt| {
                    if val.is_zero() {
                        return;
                    }
                    let a = val.abs();
                    if best_abs.as_ref().map_or(true, |b| a < *b) {
                        best_abs = Some(a);
                        best = Some((i, j));
                    }
                };
                consider(t, t, &d.get(t, t).clone());
                for i in t + 1..rows {
                    let x = d.get(i, t).clone();
                    consider(i, t, &x);
                }
                for j in t + 1..cols {
                    let x = d.get(t, j).clone();
                    consider(t, j, &x);
                }
                let (bi, bj) = best.expect("pivot row/column cannot vanish");
                d.swap_rows(t, bi);
                u.swap_rows(t, bi);
                d.swap_cols(t, bj);
                v.swap_cols(t, bj);
                continue;
            }
            // divisibility of the remaining block by the pivot
            let p = d.get(t, t).clone();
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(d.get(i, j) % &p).is_zero());
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Smith { d, u, v }
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if a.is_one() {
                return Some((i, j));
            }
            if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Quotient rounded toward the nearest integer, so remainders are small.
fn floor_quot(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    // prefer the remainder of least absolute value
    let r2 = &r - b;
    if r2.abs() < r.abs() {
        q + 1
    } else {
        q
    }
}

/// Invariant factors of a sparse matrix (positive, in divisibility order),
/// one per unit of rank.
///
/// Unit pivots are eliminated sparsely first (each contributes a factor 1);
/// whatever is left is handed to the dense algorithm.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    let mut w = Work::from_sparse(m, None);
    let ones = w.eliminate_units();
    let rest = w.to_dense_remaining();
    let mut out = vec![BigInt::one(); ones];
    if rest.rows() > 0 && rest.cols() > 0 {
        let s = smith_normal_form(&rest);
        out.extend(s.diagonal());
    }
    out
}

pub fn rank_z(m: &SparseMatrix) -> usize {
    invariant_factors(m).len()
}

/// Rank over the prime field ℤ/p.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    let mut w = Work::from_sparse(m, Some(p));
    w.eliminate_mod_p()
}

/// Row-oriented working copy used by the sparse eliminations.
struct Work {
    modulus: Option<BigInt>,
    rows: Vec<BTreeMap<usize, BigInt>>,
    col_rows: Vec<BTreeSet<usize>>,
    live_rows: BTreeSet<usize>,
    live_cols: BTreeSet<usize>,
}

impl Work {
    fn from_sparse(m: &SparseMatrix, p: Option<u64>) -> Self {
        let modulus = p.map(BigInt::from);
        let mut rows = vec![BTreeMap::new(); m.rows()];
        let mut col_rows = vec![BTreeSet::new(); m.cols()];
        for j in 0..m.cols() {
            for (i, v) in m.column(j) {
                let v = match &modulus {
                    Some(p) => v.mod_floor(p),
                    None => v.clone(),
                };
                if !v.is_zero() {
                    rows[*i].insert(j, v);
                    col_rows[j].insert(*i);
                }
            }
        }
        Work {
            modulus,
            rows,
            col_rows,
            live_rows: (0..m.rows()).collect(),
            live_cols: (0..m.cols()).collect(),
        }
    }

    /// row[dst] -= c · row[src]
    fn sub_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        let src_row: Vec<(usize, BigInt)> = self.rows[src]
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        for (k, v) in src_row {
            let e = self.rows[dst].entry(k).or_insert_with(BigInt::zero);
            *e -= &v * c;
            if let Some(p) = &self.modulus {
                *e = e.mod_floor(p);
            }
            if e.is_zero() {
                self.rows[dst].remove(&k);
                self.col_rows[k].remove(&dst);
            } else {
                self.col_rows[k].insert(dst);
            }
        }
    }

    fn remove_pivot(&mut self, r: usize, c: usize) {
        let cols: Vec<usize> = self.rows[r].keys().copied().collect();
        for k in cols {
            self.col_rows[k].remove(&r);
        }
        self.rows[r].clear();
        self.live_rows.remove(&r);
        self.live_cols.remove(&c);
    }

    fn pick_pivot(&self, unit_only: bool) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in &self.live_rows {
            let rl = self.rows[r].len();
            if rl == 0 {
                continue;
            }
            for (c, v) in &self.rows[r] {
                if unit_only && !v.abs().is_one() {
                    continue;
                }
                let cost = (rl - 1) * (self.col_rows[*c].len() - 1);
                if best.map_or(true, |(_, _, b)| cost < b) {
                    best = Some((r, *c, cost));
                    if cost == 0 {
                        return Some((r, *c));
                    }
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    fn eliminate_units(&mut self) -> usize {
        let mut count = 0;
        while let Some((r, c)) = self.pick_pivot(true) {
            let piv = self.rows[r][&c].clone(); // ±1, its own inverse
            let others: Vec<usize> = self.col_rows[c]
                .iter()
                .copied()
                .filter(|&x| x != r)
                .collect();
            for o in others {
                let f = &self.rows[o][&c] * &piv;
                self.sub_row(o, r, &f);
            }
            self.remove_pivot(r, c);
            count += 1;
        }
        count
    }

    fn eliminate_mod_p(&mut self) -> usize {
        let p = self.modulus.clone().expect("modulus");
        let mut count = 0;
        while let Some((r, c)) = self.pick_pivot(false) {
            let piv = self.rows[r][&c].clone();
            let inv = mod_inverse(&piv, &p);
            let others: Vec<usize> = self.col_rows[c]
                .iter()
                .copied()
                .filter(|&x| x != r)
                .collect();
            for o in others {
                let f = (&self.rows[o][&c] * &inv).mod_floor(&p);
                self.sub_row(o, r, &f);
            }
            self.remove_pivot(r, c);
            count += 1;
        }
        count
    }

    fn to_dense_remaining(&self) -> IntMatrix {
        let rows: Vec<usize> = self
            .live_rows
            .iter()
            .copied()
            .filter(|&r| !self.rows[r].is_empty())
            .collect();
        let cols: Vec<usize> = self
            .live_cols
            .iter()
            .copied()
            .filter(|&c| !self.col_rows[c].is_empty())
            .collect();
        let mut col_index = BTreeMap::new();
        for (k, c) in cols.iter().enumerate() {
            col_index.insert(*c, k);
        }
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (i, r) in rows.iter().enumerate() {
            for (c, v) in &self.rows[*r] {
                m.set(i, col_index[c], v.clone());
            }
        }
        m
    }
}

pub(crate) fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    assert!(e.gcd.is_one(), "no inverse modulo p");
    e.x.mod_floor(p)
}

/// Saturated basis of the integer kernel of `m`, as columns.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(m);
    let r = s.rank();
    (r..m.cols()).map(|j| s.v.column(j)).collect()
}

/// Basis of the kernel of `m` over ℤ/p (entries reduced to 0..p).
pub fn kernel_basis_mod_p(m: &IntMatrix, p: u64) -> Vec<Vec<BigInt>> {
    let pb = BigInt::from(p);
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j).mod_floor(&pb)).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = mod_inverse(&a[r][c], &pb);
        for x in a[r].iter_mut() {
            *x = (&*x * &inv).mod_floor(&pb);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = (&a[i][j] - &f * &a[r][j]).mod_floor(&pb);
                    a[i][j] = v;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigInt::zero(); cols];
            v[f] = BigInt::one();
            for (k, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (-&a[k][f]).mod_floor(&pb);
            }
            v
        })
        .collect()
}

/// Integer left inverse `L` of a matrix with saturated column span (L·B = I).
pub fn left_inverse(b: &IntMatrix) -> Option<IntMatrix> {
    let s = smith_normal_form(b);
    let n = b.cols();
    if s.rank() != n || s.diagonal().iter().any(|d| !d.is_one()) {
        return None;
    }
    // U B V = [I; 0]  ⇒  V [I 0] U · B = I
    let mut proj = IntMatrix::zeros(n, b.rows());
    for i in 0..n {
        proj.set(i, i, BigInt::one());
    }
    Some(s.v.mul(&proj).mul(&s.u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn smith_small_cases() {
        let m = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        check(&m);
        let d = smith_normal_form(&m).diagonal();
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(6)]);
        check(&IntMatrix::identity(3));
        check(&IntMatrix::zeros(2, 4));
        check(&IntMatrix::from_rows(&[[4, 6, 8], [6, 9, 12], [2, 3, 5]]));
    }

    #[test]
    fn sparse_matches_dense() {
        let m = IntMatrix::from_rows(&[[1, 2, 0, 3], [0, 2, 4, 6], [1, 0, -4, -3], [0, 0, 0, 5]]);
        let dense = smith_normal_form(&m).diagonal();
        assert_eq!(invariant_factors(&m.to_sparse()), dense);
        assert_eq!(rank_mod_p(&m.to_sparse(), 2), 2);
    }

    #[test]
    fn kernels() {
        let m = IntMatrix::from_rows(&[[2, 4, 6]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        let kp = kernel_basis_mod_p(&m, 2);
        assert_eq!(kp.len(), 3);
    }
}
