//! Sparse integer matrices, stored by column. Entries are kept reduced for
//! the ring they were built over and zero entries are never stored.

use std::collections::BTreeMap;

use crate::ring::Ring;

pub type SparseVec = Vec<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

/// Sum duplicate indices, reduce, drop zeros, sort by index.
pub fn normalize(ring: Ring, mut v: SparseVec) -> SparseVec {
    if v.is_empty() {
        return v;
    }
    v.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = checked_add(last.1, c),
            _ => out.push((i, c)),
        }
    }
    out.retain_mut(|e| {
        e.1 = ring.reduce(e.1);
        e.1 != 0
    });
    out
}

#[inline]
pub(crate) fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coefficient overflow in addition")
}

#[inline]
pub(crate) fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("coefficient overflow in multiplication")
}

pub fn add_scaled(ring: Ring, a: &SparseVec, c: i64, b: &SparseVec) -> SparseVec {
    let mut v = a.clone();
    v.extend(b.iter().map(|&(i, x)| (i, checked_mul(c, x))));
    normalize(ring, v)
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i, 1)]).collect() }
    }

    pub fn from_columns(ring: Ring, rows: usize, columns: Vec<SparseVec>) -> Self {
        let cols = columns.len();
        let data: Vec<SparseVec> = columns.into_iter().map(|c| normalize(ring, c)).collect();
        debug_assert!(data.iter().all(|c| c.iter().all(|&(r, _)| r < rows)));
        SparseMatrix { rows, cols, data }
    }

    pub fn from_triplets(ring: Ring, rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut data = vec![Vec::new(); cols];
        for (r, c, x) in entries {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            data[c].push((r, x));
        }
        Self::from_columns(ring, rows, data)
    }

    pub fn from_dense(ring: Ring, dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        let entries = dense
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &x)| (r, c, x)));
        Self::from_triplets(ring, rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.data[c]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_empty())
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[c].iter().find(|e| e.0 == r).map_or(0, |e| e.1)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for (c, col) in self.data.iter().enumerate() {
            for &(r, x) in col {
                d[r][c] = x;
            }
        }
        d
    }

    pub fn apply(&self, ring: Ring, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for &(c, x) in v {
            out.extend(self.data[c].iter().map(|&(r, y)| (r, checked_mul(x, y))));
        }
        normalize(ring, out)
    }

    /// `self * rhs`.
    pub fn mul(&self, ring: Ring, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let data = rhs.data.iter().map(|col| self.apply(ring, col)).collect();
        SparseMatrix { rows: self.rows, cols: rhs.cols, data }
    }

    pub fn add(&self, ring: Ring, rhs: &SparseMatrix) -> SparseMatrix {
        self.add_scaled(ring, 1, rhs)
    }

    pub fn sub(&self, ring: Ring, rhs: &SparseMatrix) -> SparseMatrix {
        self.add_scaled(ring, -1, rhs)
    }

    pub fn add_scaled(&self, ring: Ring, c: i64, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| add_scaled(ring, a, c, b)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, ring: Ring, c: i64) -> SparseMatrix {
        let data = self
            .data
            .iter()
            .map(|col| normalize(ring, col.iter().map(|&(r, x)| (r, checked_mul(c, x))).collect()))
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn reduce(&self, ring: Ring) -> SparseMatrix {
        self.scale(ring, 1)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data = vec![Vec::new(); self.rows];
        for (c, col) in self.data.iter().enumerate() {
            for &(r, x) in col {
                data[r].push((c, x));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// Place blocks at the given row/column offsets of a larger zero matrix.
    pub fn from_blocks(rows: usize, cols: usize, blocks: &[(usize, usize, &SparseMatrix)]) -> SparseMatrix {
        let mut data: Vec<SparseVec> = vec![Vec::new(); cols];
        for &(r0, c0, b) in blocks {
            assert!(r0 + b.rows <= rows && c0 + b.cols <= cols, "block out of range");
            for (c, col) in b.data.iter().enumerate() {
                data[c0 + c].extend(col.iter().map(|&(r, x)| (r0 + r, x)));
            }
        }
        for col in &mut data {
            col.sort_unstable_by_key(|e| e.0);
        }
        SparseMatrix { rows, cols, data }
    }

    /// Columns `[c0, c0+n)` as a new matrix.
    pub fn column_block(&self, c0: usize, n: usize) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: n, data: self.data[c0..c0 + n].to_vec() }
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hcat(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, rhs.rows);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        SparseMatrix { rows: self.rows, cols: self.cols + rhs.cols, data }
    }

    /// Restrict to the listed rows and columns, renumbering in list order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_pos = BTreeMap::new();
        for (k, &r) in rows.iter().enumerate() {
            row_pos.insert(r, k);
        }
        let data = cols
            .iter()
            .map(|&c| {
                let mut v: SparseVec = self.data[c].iter().filter_map(|&(r, x)| row_pos.get(&r).map(|&k| (k, x))).collect();
                v.sort_unstable_by_key(|e| e.0);
                v
            })
            .collect();
        SparseMatrix { rows: rows.len(), cols: cols.len(), data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let r = Ring::Integers;
        let a = SparseMatrix::from_dense(r, &[vec![1, 2], vec![0, 3]]);
        let b = SparseMatrix::from_dense(r, &[vec![4], vec![5]]);
        assert_eq!(a.mul(r, &b).to_dense(), vec![vec![14], vec![15]]);
        assert_eq!(a.transpose().to_dense(), vec![vec![1, 0], vec![2, 3]]);
    }

    #[test]
    fn reduction_mod_p_drops_zeros() {
        let r = Ring::Prime(3);
        let a = SparseMatrix::from_dense(r, &[vec![3, 4], vec![-1, 6]]);
        assert_eq!(a.to_dense(), vec![vec![0, 1], vec![2, 0]]);
        assert_eq!(a.nnz(), 2);
    }
}
