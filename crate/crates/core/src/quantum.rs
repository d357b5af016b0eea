//! CSS-pair checks: GF(2) orthogonality and the row/column permutations
//! that map `H_X` onto `H_Z`.
//!
//! The permutations are reversals. Rows: `r -> c_R - r (mod R)` over all
//! `R` rows. Columns, inside each coupling section of `L P` columns: the two
//! halves of `L P / 2` columns are swapped and each index is reversed as
//! `x -> c_C - x (mod L P / 2)`. The literal constants are
//! `c_R = R - 1` and `c_C = 2P - 1`; they are verified, not trusted.

use crate::construct::build_pair;
use crate::construct::ConstructionParams;
use crate::error::{Error, Result};
use crate::girth::{girth, Girth};
use crate::qc::QcBlockMatrix;
use crate::sparse::{multiply_transpose_gf2, SparseBinaryMatrix};
use serde::Serialize;

/// Outcome of an orthogonality check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthogonalityCheck {
    /// Coordinates of nonzero entries of `H_X H_Z^T`, sorted.
    pub violations: Vec<(usize, usize)>,
}

impl OrthogonalityCheck {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_orthogonal(hx: &SparseBinaryMatrix, hz: &SparseBinaryMatrix) -> Result<OrthogonalityCheck> {
    let prod = multiply_transpose_gf2(hx, hz)?;
    Ok(OrthogonalityCheck {
        violations: prod.entries().to_vec(),
    })
}

/// Block layout of a pair: `L` columns per section and the number of
/// sections (1 when uncoupled).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairLayout {
    pub l: usize,
    pub p: u64,
    pub sections: usize,
}

impl PairLayout {
    /// Reads the layout off a block matrix: two block rows mean an uncoupled
    /// pair, `nc + 1` block rows a coupled pair with `nc` sections.
    pub fn infer(m: &QcBlockMatrix) -> Result<Self> {
        let sections = m.rows().saturating_sub(1).max(1);
        if m.rows() < 2 || m.cols() % sections != 0 || (m.cols() / sections) % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "{}x{} block grid is not a pair layout",
                m.rows(),
                m.cols()
            )));
        }
        Ok(PairLayout {
            l: m.cols() / sections,
            p: m.modulus(),
            sections,
        })
    }

    fn total_rows(&self) -> usize {
        (self.sections + 1) * self.p as usize
    }

    fn half(&self) -> usize {
        self.l / 2 * self.p as usize
    }
}

/// Row and column permutations with `H_Z = P_R H_X P_C` and
/// `H_X = P_R H_Z P_C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsomorphismWitness {
    /// Entry `(r, c)` of `H_X` moves to `(row_perm[r], col_perm[c])`.
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub row_constant: usize,
    pub col_constant: usize,
    /// False when the literal constants failed and others were found.
    pub literal: bool,
    pub note: Option<String>,
}

impl IsomorphismWitness {
    pub fn apply(&self, m: &SparseBinaryMatrix) -> Result<SparseBinaryMatrix> {
        m.permuted(&self.row_perm, &self.col_perm)
    }

    /// Checks both directions.
    pub fn verifies(&self, hx: &SparseBinaryMatrix, hz: &SparseBinaryMatrix) -> bool {
        matches!(self.apply(hx), Ok(ref z) if z == hz) && matches!(self.apply(hz), Ok(ref x) if x == hx)
    }

    pub fn is_involution(&self) -> bool {
        let inv = |p: &[usize]| p.iter().enumerate().all(|(i, &j)| p[j] == i);
        inv(&self.row_perm) && inv(&self.col_perm)
    }
}

fn reversal_maps(layout: &PairLayout, c_r: usize, c_c: usize) -> (Vec<usize>, Vec<usize>) {
    let rows = layout.total_rows();
    let half = layout.half();
    let row_perm = (0..rows).map(|r| (c_r + rows - r % rows) % rows).collect();
    let sec = 2 * half;
    let col_perm = (0..layout.sections * sec)
        .map(|c| {
            let (s, x) = (c / sec, c % sec);
            let (other, inner) = if x < half { (half, x) } else { (0, x - half) };
            s * sec + other + (c_c % half + half - inner) % half
        })
        .collect();
    (row_perm, col_perm)
}

fn quick_reject(hx: &SparseBinaryMatrix, hz: &SparseBinaryMatrix, rp: &[usize], cp: &[usize]) -> bool {
    hx.entries()
        .iter()
        .step_by((hx.nnz() / 16).max(1))
        .any(|&(r, c)| !hz.get(rp[r], cp[c]))
}

/// Finds and verifies the reversal witness for a given pair.
pub fn witness_for_pair(
    hx: &SparseBinaryMatrix,
    hz: &SparseBinaryMatrix,
    layout: &PairLayout,
) -> Result<IsomorphismWitness> {
    let rows = layout.total_rows();
    let half = layout.half();
    if hx.nrows() != rows || hz.nrows() != rows || hx.ncols() != 2 * half * layout.sections || hz.ncols() != hx.ncols()
    {
        return Err(Error::DimensionMismatch("pair does not match its layout".into()));
    }
    let c_r = rows - 1;
    let c_c = (2 * layout.p as usize - 1) % half;
    let (row_perm, col_perm) = reversal_maps(layout, c_r, c_c);
    let w = IsomorphismWitness {
        row_perm,
        col_perm,
        row_constant: c_r,
        col_constant: c_c,
        literal: true,
        note: None,
    };
    if w.verifies(hx, hz) {
        return Ok(w);
    }

    // Literal constants failed: every candidate is pinned by where the first
    // entry of H_X lands.
    let Some(&(r0, c0)) = hx.entries().first() else {
        return Err(Error::NoWitness("empty matrix".into()));
    };
    let z_cols = hz.col_lists();
    for cc in 0..half {
        let (_, cp) = reversal_maps(layout, 0, cc);
        for &s in &z_cols[cp[c0]] {
            let cr = (s + r0) % rows;
            let (rp, cp) = reversal_maps(layout, cr, cc);
            if quick_reject(hx, hz, &rp, &cp) {
                continue;
            }
            let w = IsomorphismWitness {
                row_perm: rp,
                col_perm: cp,
                row_constant: cr,
                col_constant: cc,
                literal: false,
                note: Some(format!(
                    "literal constants ({c_r}, {c_c}) failed; verified constants ({cr}, {cc})"
                )),
            };
            if w.verifies(hx, hz) {
                return Ok(w);
            }
        }
    }
    Err(Error::NoWitness(format!(
        "no reversal constants map H_X to H_Z for L={} P={} sections={}",
        layout.l, layout.p, layout.sections
    )))
}

/// Witness for the pair this crate builds from `(L, P, base, n_c)`.
pub fn isomorphism_witness(params: &ConstructionParams) -> Result<IsomorphismWitness> {
    let (hx, hz) = build_pair(params)?;
    let layout = PairLayout {
        l: params.l,
        p: params.p,
        sections: params.coupling.unwrap_or(1),
    };
    witness_for_pair(&hx.expand(), &hz.expand(), &layout)
}

/// Compares the certified girths of the two matrices.
pub fn girth_equal_check(hx: &QcBlockMatrix, hz: &QcBlockMatrix) -> (bool, Girth, Girth) {
    let gx = girth(hx);
    let gz = girth(hz);
    (gx == gz, gx, gz)
}
