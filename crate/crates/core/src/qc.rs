//! Block-level (exponent) representation of QC-LDPC matrices.

use crate::error::{Error, Result};
use crate::perm::PermMapping;
use crate::sparse::SparseBinaryMatrix;
use serde::{Deserialize, Serialize};

/// A `J x L` grid of circulant blocks of size `P`. `None` is an all-zero
/// block, `Some(b)` the CPM of `x -> x + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QcBlockMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    blocks: Vec<Option<u64>>,
}

/// JSON interchange form: `{"J":..,"L":..,"P":..,"blocks":[[b|null,..],..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDescriptor {
    #[serde(rename = "J")]
    pub j: usize,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "P")]
    pub p: u64,
    pub blocks: Vec<Vec<Option<u64>>>,
}

impl QcBlockMatrix {
    /// An all-empty grid.
    pub fn empty(rows: usize, cols: usize, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("circulant size must be positive".into()));
        }
        Ok(QcBlockMatrix {
            rows,
            cols,
            modulus,
            blocks: vec![None; rows * cols],
        })
    }

    /// Builds from a row-major grid; shifts are reduced mod `modulus`.
    pub fn from_grid(grid: Vec<Vec<Option<u64>>>, modulus: u64) -> Result<Self> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, Vec::len);
        if grid.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged block grid".into()));
        }
        let mut m = Self::empty(rows, cols, modulus)?;
        for (j, row) in grid.into_iter().enumerate() {
            for (l, b) in row.into_iter().enumerate() {
                m.set(j, l, b);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, j: usize, l: usize) -> Option<u64> {
        self.blocks[j * self.cols + l]
    }

    pub fn set(&mut self, j: usize, l: usize, shift: Option<u64>) {
        self.blocks[j * self.cols + l] = shift.map(|b| b % self.modulus);
    }

    pub fn mapping(&self, j: usize, l: usize) -> Option<PermMapping> {
        self.get(j, l)
            .map(|b| PermMapping::new(b, self.modulus).expect("modulus is positive"))
    }

    /// True when no block is empty.
    pub fn is_full(&self) -> bool {
        self.blocks.iter().all(Option::is_some)
    }

    pub fn grid(&self) -> Vec<Vec<Option<u64>>> {
        self.blocks.chunks(self.cols.max(1)).map(<[_]>::to_vec).take(self.rows).collect()
    }

    /// Row `j` as plain shifts; panics on empty blocks, so only for full matrices.
    pub fn shift_row(&self, j: usize) -> Vec<u64> {
        (0..self.cols)
            .map(|l| self.get(j, l).expect("full block row"))
            .collect()
    }

    /// Block rows holding a nonempty block in column `l`.
    pub fn column_support(&self, l: usize) -> Vec<usize> {
        (0..self.rows).filter(|&j| self.get(j, l).is_some()).collect()
    }

    /// Block columns holding a nonempty block in row `j`.
    pub fn row_support(&self, j: usize) -> Vec<usize> {
        (0..self.cols).filter(|&l| self.get(j, l).is_some()).collect()
    }

    /// Concrete binary matrix: block `(j, l)` with shift `b` puts a 1 at
    /// `(j P + (i + b) mod P, l P + i)` for every `i`.
    pub fn expand(&self) -> SparseBinaryMatrix {
        let p = self.modulus as usize;
        let mut entries = Vec::with_capacity(self.blocks.iter().flatten().count() * p);
        for j in 0..self.rows {
            for l in 0..self.cols {
                if let Some(b) = self.get(j, l) {
                    let b = b as usize;
                    for i in 0..p {
                        entries.push((j * p + (i + b) % p, l * p + i));
                    }
                }
            }
        }
        SparseBinaryMatrix::from_entries(self.rows * p, self.cols * p, entries)
            .expect("distinct CPM entries")
    }

    pub fn to_descriptor(&self) -> BlockDescriptor {
        BlockDescriptor {
            j: self.rows,
            l: self.cols,
            p: self.modulus,
            blocks: self.grid(),
        }
    }

    pub fn from_descriptor(d: &BlockDescriptor) -> Result<Self> {
        if d.blocks.len() != d.j || d.blocks.iter().any(|r| r.len() != d.l) {
            return Err(Error::DimensionMismatch(format!(
                "descriptor declares {}x{} blocks",
                d.j, d.l
            )));
        }
        if let Some(b) = d.blocks.iter().flatten().flatten().find(|&&b| b >= d.p) {
            return Err(Error::InvalidParameter(format!(
                "shift {b} not in Z_{}",
                d.p
            )));
        }
        Self::from_grid(d.blocks.clone(), d.p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_descriptor()).expect("descriptor serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let d: BlockDescriptor = serde_json::from_str(s)?;
        Self::from_descriptor(&d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_zero_shift_is_identity() {
        let m = QcBlockMatrix::from_grid(vec![vec![Some(0)]], 3).unwrap();
        assert_eq!(m.expand(), SparseBinaryMatrix::identity(3));
    }

    #[test]
    fn expand_unit_shift() {
        let m = QcBlockMatrix::from_grid(vec![vec![Some(1)]], 3).unwrap();
        let expect = SparseBinaryMatrix::from_entries(3, 3, [(1, 0), (2, 1), (0, 2)]).unwrap();
        assert_eq!(m.expand(), expect);
    }

    #[test]
    fn empty_blocks_contribute_nothing() {
        let m = QcBlockMatrix::from_grid(vec![vec![Some(2), None], vec![None, Some(0)]], 4).unwrap();
        let h = m.expand();
        assert_eq!((h.nrows(), h.ncols(), h.nnz()), (8, 8, 8));
        assert!(!m.is_full());
    }

    #[test]
    fn full_expansion_has_jlp_entries() {
        for p in 1..10u64 {
            let m = QcBlockMatrix::from_grid(
                vec![vec![Some(1), Some(2), Some(3)], vec![Some(4), Some(5), Some(6)]],
                p,
            )
            .unwrap();
            let h = m.expand();
            assert_eq!(h.nnz(), 2 * 3 * p as usize);
            assert!(h.col_weights().iter().all(|&w| w == 2));
            assert!(h.row_weights().iter().all(|&w| w == 3));
        }
    }

    #[test]
    fn json_round_trip_and_format() {
        let m = QcBlockMatrix::from_grid(vec![vec![Some(1), None], vec![Some(4), Some(0)]], 7).unwrap();
        let s = m.to_json();
        assert_eq!(s, r#"{"J":2,"L":2,"P":7,"blocks":[[1,null],[4,0]]}"#);
        assert_eq!(QcBlockMatrix::from_json(&s).unwrap(), m);
    }

    #[test]
    fn descriptor_validation() {
        assert!(QcBlockMatrix::from_json(r#"{"J":1,"L":2,"P":7,"blocks":[[1]]}"#).is_err());
        assert!(QcBlockMatrix::from_json(r#"{"J":1,"L":1,"P":7,"blocks":[[7]]}"#).is_err());
    }
}
