use crate::error::{Error, Result};
use crate::qc::QcBlockMatrix;
use serde::{Deserialize, Serialize};

/// A closed walk over blocks of a block grid.
///
/// Stored as the `2n` corners `(j_0,l_0), (j_0,l_1), (j_1,l_1), ...,
/// (j_{n-1},l_0)`: even positions are followed by a move along the row,
/// odd positions by a move along the column, and the last corner returns to
/// the first along its column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockPath {
    corners: Vec<(usize, usize)>,
}

impl BlockPath {
    /// The empty walk; its composed mapping is the identity.
    pub fn empty() -> Self {
        BlockPath { corners: Vec::new() }
    }

    pub fn from_corners(corners: Vec<(usize, usize)>) -> Result<Self> {
        let k = corners.len();
        if k % 2 != 0 || k == 2 {
            return Err(Error::MalformedPath(format!("{k} corners; need an even count >= 4")));
        }
        for i in 0..k {
            let a = corners[i];
            let b = corners[(i + 1) % k];
            if i % 2 == 0 {
                if a.0 != b.0 || a.1 == b.1 {
                    return Err(Error::MalformedPath(format!(
                        "step {i}: {a:?} -> {b:?} is not a move along a row"
                    )));
                }
            } else if a.1 != b.1 || a.0 == b.0 {
                return Err(Error::MalformedPath(format!(
                    "step {i}: {a:?} -> {b:?} is not a move along a column"
                )));
            }
        }
        Ok(BlockPath { corners })
    }

    /// Builds the walk from its row sequence `j_0..j_{n-1}` and column
    /// sequence `l_0..l_{n-1}`.
    pub fn from_indices(rows: &[usize], cols: &[usize]) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::MalformedPath("row and column sequences differ in length".into()));
        }
        let n = rows.len();
        let mut corners = Vec::with_capacity(2 * n);
        for i in 0..n {
            corners.push((rows[i], cols[i]));
            corners.push((rows[i], cols[(i + 1) % n]));
        }
        Self::from_corners(corners)
    }

    pub fn corners(&self) -> &[(usize, usize)] {
        &self.corners
    }

    /// Half the cycle length.
    pub fn half_length(&self) -> usize {
        self.corners.len() / 2
    }

    /// The walk written from whichever of its `2n` row-first readings is
    /// lexicographically smallest, so equal cycles compare equal.
    pub fn canonical(&self) -> BlockPath {
        let k = self.corners.len();
        if k == 0 {
            return self.clone();
        }
        let mut best: Option<Vec<(usize, usize)>> = None;
        for start in 0..k {
            let cand: Vec<(usize, usize)> = if start % 2 == 0 {
                (0..k).map(|t| self.corners[(start + t) % k]).collect()
            } else {
                (0..k).map(|t| self.corners[(start + k - t) % k]).collect()
            };
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
        BlockPath {
            corners: best.expect("nonempty"),
        }
    }

    /// Distinct block columns the walk touches.
    pub fn columns(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.corners.iter().map(|c| c.1).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Shift `b*` of the mapping composed along `path`:
/// `sum_i (b(j_i, l_i) - b(j_i, l_{i+1})) mod P`.
pub fn alternating_shift(m: &QcBlockMatrix, path: &BlockPath) -> Result<u64> {
    let p = m.modulus();
    let mut acc = 0u64;
    for (i, &(j, l)) in path.corners().iter().enumerate() {
        if j >= m.rows() || l >= m.cols() {
            return Err(Error::MalformedPath(format!("block ({j}, {l}) outside the grid")));
        }
        let b = m.get(j, l).ok_or(Error::EmptyBlock(j, l))?;
        acc = if i % 2 == 0 { (acc + b) % p } else { (acc + p - b) % p };
    }
    Ok(acc)
}

/// Node of the expanded Tanner graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TannerNode {
    Check(usize),
    Variable(usize),
}

/// Follows `path` through the expanded matrix starting at variable `x` of
/// block column `l_0`. Returns the visited nodes (variable, check, ...) and
/// whether the walk closed on its start.
pub fn walk_expanded(m: &QcBlockMatrix, path: &BlockPath, x: u64) -> Result<(Vec<TannerNode>, bool)> {
    let p = m.modulus();
    let corners = path.corners();
    if corners.is_empty() {
        return Ok((Vec::new(), true));
    }
    let pu = p as usize;
    let mut nodes = Vec::with_capacity(corners.len());
    let l0 = corners[0].1;
    let mut inner = x % p;
    for pair in corners.chunks(2) {
        let (j, l) = pair[0];
        let (_, l_next) = pair[1];
        let b = m.get(j, l).ok_or(Error::EmptyBlock(j, l))?;
        let b_next = m.get(j, l_next).ok_or(Error::EmptyBlock(j, l_next))?;
        nodes.push(TannerNode::Variable(l * pu + inner as usize));
        let row = (inner + b) % p;
        nodes.push(TannerNode::Check(j * pu + row as usize));
        inner = (row + p - b_next) % p;
    }
    let closed = corners[0].1 == l0 && TannerNode::Variable(l0 * pu + inner as usize) == nodes[0];
    Ok((nodes, closed))
}

/// True when the expanded walk of `path` is a simple closed cycle. Because
/// every block is a shift, the answer does not depend on the start point.
pub fn is_simple_cycle(m: &QcBlockMatrix, path: &BlockPath) -> Result<bool> {
    let (mut nodes, closed) = walk_expanded(m, path, 0)?;
    if !closed {
        return Ok(false);
    }
    let n = nodes.len();
    nodes.sort_unstable();
    nodes.dedup();
    Ok(nodes.len() == n)
}

/// A block path whose composed mapping has a fixed point, witnessing a
/// cycle of length `2 * half_length` in the expanded matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleCertificate {
    path: BlockPath,
    alternating_shift: u64,
}

/// JSON form `{length, path: [[j,l],...], b_star}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub length: usize,
    pub path: Vec<[usize; 2]>,
    pub b_star: u64,
}

impl CycleCertificate {
    /// Checks `b* = 0` and that the expanded walk is a simple cycle.
    pub fn new(m: &QcBlockMatrix, path: BlockPath) -> Result<Self> {
        let b = alternating_shift(m, &path)?;
        if b != 0 {
            return Err(Error::MalformedPath(format!("alternating shift is {b}, not 0")));
        }
        if !is_simple_cycle(m, &path)? {
            return Err(Error::MalformedPath("expanded walk is not a simple cycle".into()));
        }
        Ok(CycleCertificate {
            path,
            alternating_shift: b,
        })
    }

    pub(crate) fn new_unchecked(path: BlockPath) -> Self {
        CycleCertificate {
            path,
            alternating_shift: 0,
        }
    }

    pub fn path(&self) -> &BlockPath {
        &self.path
    }

    pub fn half_length(&self) -> usize {
        self.path.half_length()
    }

    pub fn length(&self) -> usize {
        2 * self.half_length()
    }

    pub fn alternating_shift(&self) -> u64 {
        self.alternating_shift
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            length: self.length(),
            path: self.path.corners().iter().map(|&(j, l)| [j, l]).collect(),
            b_star: self.alternating_shift,
        }
    }
}
