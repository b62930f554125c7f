//! Smith normal form.
//!
//! [`smith_normal_form`] is the dense algorithm with unimodular transforms and
//! pivots on the entry of least absolute value. [`invariant_factors`] is meant
//! for the large, very sparse boundary matrices of nerve complexes: it first
//! eliminates unit pivots sparsely (working in `i64` with a `BigInt` fallback on
//! overflow) and hands the small remainder to the dense routine.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

/// `u * m * v = diag(diag, 0, ..)` with `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub diag: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

struct Dense {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

fn dense_identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl Dense {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_j
    fn row_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        fn go(m: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
            let (src, dst) = if i < j {
                let (lo, hi) = m.split_at_mut(j);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = m.split_at_mut(i);
                (&lo[j], &mut hi[0])
            };
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d -= q * s;
                }
            }
        }
        go(&mut self.a, i, j, q);
        if let Some(u) = &mut self.u {
            go(u, i, j, q);
        }
    }

    /// col_i -= q * col_j
    fn col_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        fn go(m: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
            for row in m {
                if !row[j].is_zero() {
                    let t = q * &row[j];
                    row[i] -= t;
                }
            }
        }
        go(&mut self.a, i, j, q);
        if let Some(v) = &mut self.v {
            go(v, i, j, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().map_or(true, |(_, _, b)| ax < *b) {
                    let unit = ax.is_one();
                    best = Some((i, j, ax));
                    if unit {
                        let (i, j, _) = best.unwrap();
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) -> Vec<BigInt> {
        let (m, n) = (self.rows(), self.cols());
        let mut diag = Vec::new();
        for t in 0..m.min(n) {
            let Some((pi, pj)) = self.min_in_block(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                for i in t + 1..m {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.row_axpy(i, t, &q);
                    }
                }
                if let Some(i) = argmin_nonzero((t + 1..m).map(|i| (i, &self.a[i][t]))) {
                    self.swap_rows(t, i);
                    continue;
                }
                for j in t + 1..n {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.col_axpy(j, t, &q);
                    }
                }
                if let Some(j) = argmin_nonzero((t + 1..n).map(|j| (j, &self.a[t][j]))) {
                    self.swap_cols(t, j);
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.row_axpy(t, i, &BigInt::from(-1)),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            diag.push(self.a[t][t].clone());
        }
        diag
    }
}

fn argmin_nonzero<'a>(it: impl Iterator<Item = (usize, &'a BigInt)>) -> Option<usize> {
    it.filter(|(_, x)| !x.is_zero()).min_by(|a, b| a.1.abs().cmp(&b.1.abs())).map(|(i, _)| i)
}

/// Dense Smith normal form with transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut d = Dense {
        a: m.to_dense(),
        u: Some(dense_identity(m.rows())),
        v: Some(dense_identity(m.cols())),
    };
    if m.rows() == 0 || m.cols() == 0 {
        d.a = vec![vec![]; m.rows()];
    }
    let diag = d.run();
    SmithForm {
        u: IntMatrix::from_dense(m.rows(), m.rows(), d.u.as_ref().unwrap()),
        v: IntMatrix::from_dense(m.cols(), m.cols(), d.v.as_ref().unwrap()),
        diag,
    }
}

fn dense_invariant_factors(a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let mut d = Dense { a, u: None, v: None };
    d.run()
}

/// Nonzero invariant factors of `m` (its Smith diagonal), ascending.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    if m.is_zero() {
        return Vec::new();
    }
    if let Some(cols) = m.to_i64_columns() {
        if let Some(f) = sparse_factors::<i64>(m.rows(), cols) {
            return f;
        }
    }
    let cols = m.columns().map(|c| c.to_vec()).collect();
    sparse_factors::<BigInt>(m.rows(), cols).expect("bigint elimination cannot overflow")
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    invariant_factors(m).len()
}

trait Entry: Clone + PartialEq + Zero {
    fn is_unit(&self) -> bool;
    /// `a - q * b`, or `None` on overflow.
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self>;
    fn mul_checked(&self, b: &Self) -> Option<Self>;
    fn big(&self) -> BigInt;
}

impl Entry for i64 {
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(q.checked_mul(*b)?)
    }
    fn mul_checked(&self, b: &Self) -> Option<Self> {
        self.checked_mul(*b)
    }
    fn big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        Some(a - q * b)
    }
    fn mul_checked(&self, b: &Self) -> Option<Self> {
        Some(self * b)
    }
    fn big(&self) -> BigInt {
        self.clone()
    }
}

/// Sparse elimination of unit pivots followed by dense SNF of what is left.
/// Returns `None` if an `i64` computation overflowed.
fn sparse_factors<T: Entry>(nrows: usize, cols: Vec<Vec<(usize, T)>>) -> Option<Vec<BigInt>> {
    let ncols = cols.len();
    // row-major copy: row -> (col -> value)
    let mut rows: Vec<HashMap<usize, T>> = vec![HashMap::new(); nrows];
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); ncols];
    for (c, col) in cols.into_iter().enumerate() {
        for (r, v) in col {
            if !v.is_zero() {
                rows[r].insert(c, v);
                col_rows[c].insert(r);
            }
        }
    }
    let mut units = 0usize;
    let mut col_alive = vec![true; ncols];
    // queue ordered by (current column length, column index); stale entries are skipped
    let mut queue: BTreeSet<(usize, usize)> =
        (0..ncols).filter(|&c| !col_rows[c].is_empty()).map(|c| (col_rows[c].len(), c)).collect();
    let mut queued_len: Vec<usize> = col_rows.iter().map(HashSet::len).collect();

    while let Some((len, c)) = queue.pop_first() {
        if !col_alive[c] || len != queued_len[c] || col_rows[c].is_empty() {
            continue;
        }
        // unit entry in this column with the shortest row
        let pivot_row = col_rows[c]
            .iter()
            .filter(|&&r| rows[r][&c].is_unit())
            .min_by_key(|&&r| (rows[r].len(), r))
            .copied();
        let Some(p) = pivot_row else { continue };
        let pv = rows[p][&c].clone(); // +1 or -1, its own inverse
        let prow: Vec<(usize, T)> = rows[p].iter().map(|(k, v)| (*k, v.clone())).collect();
        let targets: Vec<usize> = col_rows[c].iter().copied().filter(|&r| r != p).collect();
        let mut touched: HashSet<usize> = HashSet::new();
        for r in targets {
            let q = rows[r][&c].mul_checked(&pv)?;
            for (k, v) in &prow {
                let cur = rows[r].get(k).cloned().unwrap_or_else(T::zero);
                let new = T::sub_mul(&cur, &q, v)?;
                if new.is_zero() {
                    rows[r].remove(k);
                    col_rows[*k].remove(&r);
                } else {
                    if cur.is_zero() {
                        col_rows[*k].insert(r);
                    }
                    rows[r].insert(*k, new);
                }
                touched.insert(*k);
            }
        }
        // drop pivot row and column
        for (k, _) in &prow {
            col_rows[*k].remove(&p);
            touched.insert(*k);
        }
        rows[p].clear();
        col_alive[c] = false;
        col_rows[c].clear();
        units += 1;
        for k in touched {
            if col_alive[k] && !col_rows[k].is_empty() {
                queued_len[k] = col_rows[k].len();
                queue.insert((queued_len[k], k));
            }
        }
    }

    let live_rows: Vec<usize> = (0..nrows).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..ncols).filter(|&c| col_alive[c] && !col_rows[c].is_empty()).collect();
    let mut factors = vec![BigInt::one(); units];
    if !live_rows.is_empty() {
        let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
        for (i, r) in live_rows.iter().enumerate() {
            for (c, v) in &rows[*r] {
                dense[i][col_pos[c]] = v.big();
            }
        }
        factors.extend(dense_invariant_factors(dense));
    }
    Some(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn small_example() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, big(&[2, 4]));
        assert_eq!(invariant_factors(&m), big(&[2, 4]));
    }

    #[test]
    fn rank_deficient_and_empty() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(smith_normal_form(&m).diag, big(&[1]));
        assert!(invariant_factors(&IntMatrix::zeros(0, 3)).is_empty());
        assert!(smith_normal_form(&IntMatrix::zeros(3, 0)).diag.is_empty());
    }

    fn diag_matrix(m: &IntMatrix, s: &SmithForm) -> IntMatrix {
        &(&s.u * m) * &s.v
    }

    fn expected_diag(rows: usize, cols: usize, diag: &[BigInt]) -> IntMatrix {
        IntMatrix::from_triplets(rows, cols, diag.iter().enumerate().map(|(i, v)| (i, i, v.clone())))
    }

    proptest! {
        #[test]
        fn transforms_diagonalise(
            (r, c, entries) in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
                (Just(r), Just(c), proptest::collection::vec(-6i64..7, r * c))
            })
        ) {
            let rows: Vec<Vec<i64>> = entries.chunks(c).map(|x| x.to_vec()).collect();
            let m = IntMatrix::from_rows(&rows);
            let s = smith_normal_form(&m);
            prop_assert_eq!(diag_matrix(&m, &s), expected_diag(r, c, &s.diag));
            for w in s.diag.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            prop_assert!(s.diag.iter().all(|d| d.is_positive()));
            // unimodular: square with all invariant factors equal to one
            prop_assert!(invariant_factors(&s.u).iter().all(|d| d.is_one()));
            prop_assert_eq!(invariant_factors(&s.u).len(), r);
            prop_assert_eq!(invariant_factors(&s.v).len(), c);
            // sparse path agrees with the dense one
            prop_assert_eq!(invariant_factors(&m), s.diag.clone());
        }
    }
}
