//! Sparse binary matrices stored as sorted coordinate lists.

use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// A binary matrix given by the coordinates of its 1-entries, sorted in
/// row-major order with no duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseBinaryMatrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize)>,
}

impl SparseBinaryMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseBinaryMatrix {
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    /// Builds a matrix from 1-coordinates. Duplicates are rejected rather
    /// than cancelled.
    pub fn from_entries<I>(nrows: usize, ncols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut v: Vec<(usize, usize)> = entries.into_iter().collect();
        for &(row, col) in &v {
            if row >= nrows || col >= ncols {
                return Err(Error::OutOfRange {
                    row,
                    col,
                    nrows,
                    ncols,
                });
            }
        }
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEntry(w[0].0, w[0].1));
        }
        Ok(SparseBinaryMatrix {
            nrows,
            ncols,
            entries: v,
        })
    }

    pub fn identity(n: usize) -> Self {
        SparseBinaryMatrix {
            nrows: n,
            ncols: n,
            entries: (0..n).map(|i| (i, i)).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.entries.binary_search(&(row, col)).is_ok()
    }

    /// Column indices of each row, ascending.
    pub fn row_lists(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.nrows];
        for &(r, c) in &self.entries {
            rows[r].push(c);
        }
        rows
    }

    /// Row indices of each column, ascending.
    pub fn col_lists(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.ncols];
        for &(r, c) in &self.entries {
            cols[c].push(r);
        }
        cols
    }

    pub fn row_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.nrows];
        for &(r, _) in &self.entries {
            w[r] += 1;
        }
        w
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.ncols];
        for &(_, c) in &self.entries {
            w[c] += 1;
        }
        w
    }

    pub fn transpose(&self) -> SparseBinaryMatrix {
        let mut entries: Vec<_> = self.entries.iter().map(|&(r, c)| (c, r)).collect();
        entries.sort_unstable();
        SparseBinaryMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            entries,
        }
    }

    /// `H v` over GF(2) for a 0/1 vector `v` of length `ncols`.
    pub fn mul_vec(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.ncols
            )));
        }
        let mut out = vec![0u8; self.nrows];
        for &(r, c) in &self.entries {
            out[r] ^= v[c] & 1;
        }
        Ok(out)
    }

    /// Overlap counts `|{c : (r,c) in A, (s,c) in B}|` for every pair with a
    /// nonzero count, i.e. the integer product `A B^T` without reduction.
    pub fn overlap_counts(a: &Self, b: &Self) -> Result<Vec<((usize, usize), usize)>> {
        if a.ncols != b.ncols {
            return Err(Error::DimensionMismatch(format!(
                "{} columns against {} columns",
                a.ncols, b.ncols
            )));
        }
        let a_cols = a.col_lists();
        let b_cols = b.col_lists();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for c in 0..a.ncols {
            for &r in &a_cols[c] {
                for &s in &b_cols[c] {
                    pairs.push((r, s));
                }
            }
        }
        pairs.sort_unstable();
        let mut out: Vec<((usize, usize), usize)> = Vec::new();
        for p in pairs {
            match out.last_mut() {
                Some((q, n)) if *q == p => *n += 1,
                _ => out.push((p, 1)),
            }
        }
        Ok(out)
    }

    /// Permutes rows and columns: entry `(r, c)` moves to
    /// `(row_perm[r], col_perm[c])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<SparseBinaryMatrix> {
        if row_perm.len() != self.nrows || col_perm.len() != self.ncols {
            return Err(Error::DimensionMismatch("permutation sizes".into()));
        }
        Self::from_entries(
            self.nrows,
            self.ncols,
            self.entries.iter().map(|&(r, c)| (row_perm[r], col_perm[c])),
        )
    }
}

/// `A B^T` over GF(2).
pub fn multiply_transpose_gf2(
    a: &SparseBinaryMatrix,
    b: &SparseBinaryMatrix,
) -> Result<SparseBinaryMatrix> {
    let counts = SparseBinaryMatrix::overlap_counts(a, b)?;
    let entries: BTreeSet<(usize, usize)> = counts
        .into_iter()
        .filter(|(_, n)| n % 2 == 1)
        .map(|(p, _)| p)
        .collect();
    SparseBinaryMatrix::from_entries(a.nrows, b.nrows, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn duplicates_are_errors() {
        let e = SparseBinaryMatrix::from_entries(2, 2, [(0, 0), (1, 1), (0, 0)]);
        assert_eq!(e, Err(Error::DuplicateEntry(0, 0)));
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(SparseBinaryMatrix::from_entries(2, 2, [(2, 0)]).is_err());
    }

    #[test]
    fn identity_product() {
        let i = SparseBinaryMatrix::identity(5);
        assert_eq!(multiply_transpose_gf2(&i, &i).unwrap(), i);
    }

    #[test]
    fn even_overlap_cancels() {
        let a = SparseBinaryMatrix::from_entries(1, 3, [(0, 0), (0, 2)]).unwrap();
        let b = SparseBinaryMatrix::from_entries(2, 3, [(0, 0), (0, 2), (1, 1)]).unwrap();
        let p = multiply_transpose_gf2(&a, &b).unwrap();
        assert!(p.is_zero());
        assert_eq!((p.nrows(), p.ncols()), (1, 2));
    }

    #[test]
    fn dimension_mismatch() {
        let a = SparseBinaryMatrix::zeros(2, 3);
        let b = SparseBinaryMatrix::zeros(2, 4);
        assert!(multiply_transpose_gf2(&a, &b).is_err());
    }

    fn dense_product(a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
        a.iter()
            .map(|ra| {
                b.iter()
                    .map(|rb| ra.iter().zip(rb).fold(0u8, |acc, (x, y)| acc ^ (x & y)))
                    .collect()
            })
            .collect()
    }

    fn dense_strategy() -> impl Strategy<Value = (Vec<Vec<u8>>, Vec<Vec<u8>>)> {
        (1usize..=32, 1usize..=32, 1usize..=32).prop_flat_map(|(m, k, n)| {
            (
                proptest::collection::vec(proptest::collection::vec(0u8..2, n), m),
                proptest::collection::vec(proptest::collection::vec(0u8..2, n), k),
            )
        })
    }

    fn to_sparse(d: &[Vec<u8>]) -> SparseBinaryMatrix {
        let ncols = d[0].len();
        SparseBinaryMatrix::from_entries(
            d.len(),
            ncols,
            d.iter().enumerate().flat_map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &v)| v == 1)
                    .map(move |(c, _)| (r, c))
            }),
        )
        .unwrap()
    }

    proptest! {
        #[test]
        fn sparse_product_matches_dense((a, b) in dense_strategy()) {
            let expect = dense_product(&a, &b);
            let got = multiply_transpose_gf2(&to_sparse(&a), &to_sparse(&b)).unwrap();
            for (r, row) in expect.iter().enumerate() {
                for (s, &v) in row.iter().enumerate() {
                    prop_assert_eq!(got.get(r, s), v == 1);
                }
            }
        }
    }
}
