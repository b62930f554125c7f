//! Sparse integer matrices with arbitrary-precision entries.
//!
//! Storage is column-major: each column is a row-sorted list of nonzero
//! entries. Two matrices with the same entries compare equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, BigInt::one())]).collect();
        IntMatrix { rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets<I, V>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, V)>,
        V: Into<BigInt>,
    {
        let mut acc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) out of range {rows}x{cols}");
            *acc[c].entry(r).or_insert_with(BigInt::zero) += v.into();
        }
        let data = acc
            .into_iter()
            .map(|col| col.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        IntMatrix { rows, cols, data }
    }

    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        let cols = columns.len();
        let triplets = columns
            .into_iter()
            .enumerate()
            .flat_map(|(c, col)| col.into_iter().map(move |(r, v)| (r, c, v)));
        Self::from_triplets(rows, cols, triplets)
    }

    /// Row-major dense constructor. Panics on ragged input.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut trip = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                trip.push((i, j, v.clone().into()));
            }
        }
        Self::from_triplets(r, c, trip)
    }

    /// Like [`IntMatrix::from_rows`] but with explicit shape, so empty matrices keep their size.
    pub fn from_dense(rows: usize, cols: usize, entries: &[Vec<BigInt>]) -> Self {
        let mut trip = Vec::new();
        for (i, row) in entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                trip.push((i, j, v.clone()));
            }
        }
        Self::from_triplets(rows, cols, trip)
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        Self::from_triplets(n, n, entries.iter().enumerate().map(|(i, v)| (i, i, v.clone())))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.data[c]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[(usize, BigInt)]> {
        self.data.iter().map(Vec::as_slice)
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        assert!(r < self.rows && c < self.cols);
        match self.data[c].binary_search_by_key(&r, |(i, _)| *i) {
            Ok(k) => self.data[c][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v.clone())))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|col| col.iter().map(|(r, v)| (*r, v * k)).collect())
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut data = Vec::with_capacity(rhs.cols);
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for col in &rhs.data {
            acc.clear();
            for (k, b) in col {
                for (i, a) in &self.data[*k] {
                    *acc.entry(*i).or_insert_with(BigInt::zero) += a * b;
                }
            }
            data.push(
                std::mem::take(&mut acc)
                    .into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            );
        }
        Ok(IntMatrix { rows: self.rows, cols: rhs.cols, data })
    }

    fn zip_with(&self, rhs: &IntMatrix, sign: i32) -> Result<IntMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let trip = self.triplets().map(|(r, c, v)| (r, c, v.clone())).chain(
            rhs.triplets()
                .map(|(r, c, v)| (r, c, if sign < 0 { -v.clone() } else { v.clone() })),
        );
        Ok(Self::from_triplets(self.rows, self.cols, trip))
    }

    pub fn checked_add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, 1)
    }

    pub fn checked_sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, -1)
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch("hstack needs equal row counts".into()));
        }
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Ok(IntMatrix { rows: self.rows, cols: self.cols + rhs.cols, data })
    }

    /// Places `blocks[i][j]` at block position (i, j). Every block row must agree in height
    /// and every block column in width.
    pub fn block(blocks: &[Vec<&IntMatrix>]) -> Result<IntMatrix> {
        let heights: Vec<usize> = blocks.iter().map(|row| row[0].rows).collect();
        let widths: Vec<usize> = blocks
            .first()
            .map(|row| row.iter().map(|m| m.cols).collect())
            .unwrap_or_default();
        let mut trip = Vec::new();
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(Error::DimensionMismatch("ragged block matrix".into()));
            }
            let mut c0 = 0;
            for (bj, m) in row.iter().enumerate() {
                if m.rows != heights[bi] || m.cols != widths[bj] {
                    return Err(Error::DimensionMismatch("block sizes disagree".into()));
                }
                trip.extend(m.triplets().map(|(r, c, v)| (r0 + r, c0 + c, v.clone())));
                c0 += m.cols;
            }
            r0 += heights[bi];
        }
        Ok(Self::from_triplets(r0, widths.iter().sum(), trip))
    }

    pub fn block_diag(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|m| m.rows).sum();
        let cols = blocks.iter().map(|m| m.cols).sum();
        let mut trip = Vec::new();
        let (mut r0, mut c0) = (0, 0);
        for m in blocks {
            trip.extend(m.triplets().map(|(r, c, v)| (r0 + r, c0 + c, v.clone())));
            r0 += m.rows;
            c0 += m.cols;
        }
        Self::from_triplets(rows, cols, trip)
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![BigInt::zero(); self.rows];
        for (c, col) in self.data.iter().enumerate() {
            if x[c].is_zero() {
                continue;
            }
            for (r, v) in col {
                out[*r] += v * &x[c];
            }
        }
        out
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.triplets().map(|(_, _, v)| v.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Entries as `i64` when they all fit.
    pub fn to_i64_columns(&self) -> Option<Vec<Vec<(usize, i64)>>> {
        self.data
            .iter()
            .map(|col| col.iter().map(|(r, v)| v.to_i64().map(|x| (*r, x))).collect())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows * self.cols > 400 {
            return write!(f, "IntMatrix({}x{}, nnz={})", self.rows, self.cols, self.nnz());
        }
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix product shape")
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_add(rhs).expect("matrix sum shape")
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_sub(rhs).expect("matrix difference shape")
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        self.scale(&BigInt::from(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let m = IntMatrix::from_triplets(2, 2, vec![(0, 0, 1), (0, 0, -1), (1, 1, 3), (1, 1, 2)]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), BigInt::from(5));
        assert_eq!(m.get(0, 0), BigInt::zero());
    }

    #[test]
    fn product_matches_hand_computation() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(&a * &b, IntMatrix::from_rows(&[vec![2, 1], vec![4, 3]]));
        assert!(a.checked_mul(&IntMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn blocks_assemble() {
        let i = IntMatrix::identity(1);
        let z = IntMatrix::zeros(1, 1);
        let m = IntMatrix::block(&[vec![&i, &z], vec![&z, &i]]).unwrap();
        assert_eq!(m, IntMatrix::identity(2));
        assert_eq!(IntMatrix::block_diag(&[&i, &i]), IntMatrix::identity(2));
    }

    #[test]
    fn transpose_is_involutive() {
        let a = IntMatrix::from_rows(&[vec![1, 0, 5], vec![0, -2, 0]]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().shape(), (3, 2));
    }
}
