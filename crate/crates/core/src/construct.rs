//! Deterministic builders for the column-weight-2 matrix families.
//!
//! All exponents are powers of a base `n` (2 by default). With `h = L/2`:
//!
//! * `f_l = x + n^(l + off)` and `g_l = x + n^(l + h + off)` for `l in Z_h`;
//! * the X matrix places `f_{l-j}` in the left half and `g_{l-h-j}` in the
//!   right half (indices mod `h`);
//! * the Z matrix places `g_{j-l}^{-1}` in the left half and
//!   `f_{j-l+h}^{-1}` in the right half.
//!
//! `off` is 0 except for odd sections of a spatially coupled pair, where it
//! is `L`.

use crate::error::{Error, Result};
use crate::qc::QcBlockMatrix;

/// Parameters shared by all builders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionParams {
    /// Block columns of the full matrix.
    pub l: usize,
    /// Circulant size.
    pub p: u64,
    /// Exponent base.
    pub base: u64,
    /// Coupling number, `None` for an uncoupled pair.
    pub coupling: Option<usize>,
}

impl ConstructionParams {
    pub fn new(l: usize, p: u64) -> Self {
        ConstructionParams {
            l,
            p,
            base: 2,
            coupling: None,
        }
    }

    pub fn with_base(mut self, base: u64) -> Self {
        self.base = base;
        self
    }

    pub fn with_coupling(mut self, nc: usize) -> Self {
        self.coupling = Some(nc);
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_params(self.l, self.p, self.base)?;
        if let Some(nc) = self.coupling {
            if nc == 0 {
                return Err(Error::InvalidParameter("coupling number must be at least 1".into()));
            }
            if self.l < 6 {
                return Err(Error::InvalidParameter("spatial coupling requires L >= 6".into()));
            }
        }
        Ok(())
    }

    /// True when the parameters carry a girth-12 guarantee (`L >= 6`).
    pub fn girth_guaranteed(&self) -> bool {
        self.l >= 6
    }
}

fn check_params(l: usize, p: u64, base: u64) -> Result<()> {
    if l % 2 != 0 {
        return Err(Error::InvalidParameter(format!("L must be even, got {l}")));
    }
    if l < 4 {
        return Err(Error::InvalidParameter(format!("L must be at least 4, got {l}")));
    }
    if p < 2 {
        return Err(Error::InvalidParameter(format!("P must be at least 2, got {p}")));
    }
    if base < 2 {
        return Err(Error::InvalidParameter(format!("base must be at least 2, got {base}")));
    }
    Ok(())
}

/// `base^exp mod p`.
pub fn pow_mod(base: u64, exp: u64, p: u64) -> u64 {
    let m = p as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

fn wrap(i: i64, h: usize) -> u64 {
    i.rem_euclid(h as i64) as u64
}

/// Shift of `f_{idx}` (or `g_{idx}` when `upper`), indices mod `h`.
fn fg_shift(idx: i64, upper: bool, h: usize, offset: u64, base: u64, p: u64) -> u64 {
    let e = wrap(idx, h) + if upper { h as u64 } else { 0 } + offset;
    pow_mod(base, e, p)
}

fn neg(b: u64, p: u64) -> u64 {
    (p - b % p) % p
}

/// The `2 x L/2` building block with `(j, l) = f_{l-j}`.
pub fn build_classical_half(l: usize, p: u64, base: u64) -> Result<QcBlockMatrix> {
    check_params(l, p, base)?;
    let h = l / 2;
    let mut m = QcBlockMatrix::empty(2, h, p)?;
    for j in 0..2 {
        for c in 0..h {
            m.set(j, c, Some(fg_shift(c as i64 - j as i64, false, h, 0, base, p)));
        }
    }
    Ok(m)
}

fn x_blocks(l: usize, p: u64, base: u64, offset: u64) -> Result<QcBlockMatrix> {
    let h = l / 2;
    let mut m = QcBlockMatrix::empty(2, l, p)?;
    for j in 0..2i64 {
        for c in 0..l as i64 {
            let b = if (c as usize) < h {
                fg_shift(c - j, false, h, offset, base, p)
            } else {
                fg_shift(c - h as i64 - j, true, h, offset, base, p)
            };
            m.set(j as usize, c as usize, Some(b));
        }
    }
    Ok(m)
}

fn z_blocks(l: usize, p: u64, base: u64, offset: u64) -> Result<QcBlockMatrix> {
    let h = l / 2;
    let mut m = QcBlockMatrix::empty(2, l, p)?;
    for j in 0..2i64 {
        for c in 0..l as i64 {
            let b = if (c as usize) < h {
                fg_shift(j - c, true, h, offset, base, p)
            } else {
                fg_shift(j - c + h as i64, false, h, offset, base, p)
            };
            m.set(j as usize, c as usize, Some(neg(b, p)));
        }
    }
    Ok(m)
}

/// `[H, H']`, a `2 x L` matrix of girth 12 for `L >= 6`, `P >= 2^(L+1)`.
pub fn build_classical(l: usize, p: u64, base: u64) -> Result<QcBlockMatrix> {
    check_params(l, p, base)?;
    x_blocks(l, p, base, 0)
}

/// The orthogonal CSS pair `(H_X, H_Z)`; `H_X` equals [`build_classical`].
pub fn build_orthogonal_pair(l: usize, p: u64, base: u64) -> Result<(QcBlockMatrix, QcBlockMatrix)> {
    check_params(l, p, base)?;
    Ok((x_blocks(l, p, base, 0)?, z_blocks(l, p, base, 0)?))
}

/// Exponent offset of section `ic`: adjacent sections alternate between the
/// `n^0..n^(L-1)` and `n^L..n^(2L-1)` exponent sets.
pub fn section_offset(l: usize, ic: usize) -> u64 {
    if ic % 2 == 0 {
        0
    } else {
        l as u64
    }
}

/// Spatially coupled pair with `nc` sections sharing `P` rows.
///
/// `H_X` has `nc + 1` block rows and `nc L` block columns; section `ic` sits
/// in block rows `{ic, ic+1}`. In `H_Z` the same section sits in block rows
/// `{nc-1-ic, nc-ic}`.
pub fn build_sc_pair(l: usize, p: u64, base: u64, nc: usize) -> Result<(QcBlockMatrix, QcBlockMatrix)> {
    sc_pair_with_offsets(l, p, base, nc, |ic| section_offset(l, ic))
}

/// Coupled layout with the same exponents in every section. Exists to
/// exhibit the inter-section 8-cycles that the per-section variation removes.
pub fn build_sc_pair_uniform(l: usize, p: u64, base: u64, nc: usize) -> Result<(QcBlockMatrix, QcBlockMatrix)> {
    sc_pair_with_offsets(l, p, base, nc, |_| 0)
}

fn sc_pair_with_offsets(
    l: usize,
    p: u64,
    base: u64,
    nc: usize,
    offset: impl Fn(usize) -> u64,
) -> Result<(QcBlockMatrix, QcBlockMatrix)> {
    ConstructionParams::new(l, p)
        .with_base(base)
        .with_coupling(nc)
        .validate()?;
    let mut hx = QcBlockMatrix::empty(nc + 1, nc * l, p)?;
    let mut hz = QcBlockMatrix::empty(nc + 1, nc * l, p)?;
    for ic in 0..nc {
        let sx = x_blocks(l, p, base, offset(ic))?;
        let sz = z_blocks(l, p, base, offset(ic))?;
        for j in 0..2 {
            for c in 0..l {
                hx.set(ic + j, ic * l + c, sx.get(j, c));
                hz.set(nc - 1 - ic + j, ic * l + c, sz.get(j, c));
            }
        }
    }
    Ok((hx, hz))
}

/// Builds whichever family `params` describes: the orthogonal pair, or the
/// coupled pair when a coupling number is set.
pub fn build_pair(params: &ConstructionParams) -> Result<(QcBlockMatrix, QcBlockMatrix)> {
    params.validate()?;
    match params.coupling {
        Some(nc) => build_sc_pair(params.l, params.p, params.base, nc),
        None => build_orthogonal_pair(params.l, params.p, params.base),
    }
}

fn checked_pow(base: u64, exp: usize, what: &str) -> Result<u64> {
    base.checked_pow(exp as u32)
        .filter(|_| exp <= u32::MAX as usize)
        .ok_or_else(|| Error::Overflow(what.into()))
}

/// Circulant size above which the uncoupled construction has girth 12:
/// `2^(L+1)` for base 2 and `2 n^(L-1)` for a general base `n`.
pub fn bound_p0(l: usize, base: u64) -> Result<u64> {
    if base == 2 {
        checked_pow(2, l + 1, "P_0")
    } else {
        bound_p0_general(l, base)
    }
}

/// Bound for the coupled construction: `2^L (2^L + 1)` for base 2 and
/// `2 n^(L-1) (n^L + 1)` otherwise.
pub fn bound_p1(l: usize, base: u64) -> Result<u64> {
    if base == 2 {
        let t = checked_pow(2, l, "P_1")?;
        t.checked_add(1)
            .and_then(|u| u.checked_mul(t))
            .ok_or_else(|| Error::Overflow("P_1".into()))
    } else {
        bound_p1_general(l, base)
    }
}

/// `2 n^(L-1)` for any base, including 2 (where it differs from `2^(L+1)`).
pub fn bound_p0_general(l: usize, base: u64) -> Result<u64> {
    if l == 0 {
        return Err(Error::InvalidParameter("L must be positive".into()));
    }
    checked_pow(base, l - 1, "P_0")?
        .checked_mul(2)
        .ok_or_else(|| Error::Overflow("P_0".into()))
}

/// `2 n^(L-1) (n^L + 1)` for any base.
pub fn bound_p1_general(l: usize, base: u64) -> Result<u64> {
    let p0 = bound_p0_general(l, base)?;
    checked_pow(base, l, "P_1")?
        .checked_add(1)
        .and_then(|t| t.checked_mul(p0))
        .ok_or_else(|| Error::Overflow("P_1".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::multiply_transpose_gf2;

    fn row(m: &QcBlockMatrix, j: usize) -> Vec<u64> {
        m.shift_row(j)
    }

    #[test]
    fn half_examples() {
        let h = build_classical_half(6, 49, 2).unwrap();
        assert_eq!(row(&h, 0), vec![1, 2, 4]);
        assert_eq!(row(&h, 1), vec![4, 1, 2]);
        assert_eq!(row(&build_classical_half(6, 5, 2).unwrap(), 0), vec![1, 2, 4]);
        assert_eq!(row(&build_classical_half(8, 1000, 3).unwrap(), 0), vec![1, 3, 9, 27]);
    }

    #[test]
    fn classical_examples() {
        let h = build_classical(6, 49, 2).unwrap();
        assert_eq!(row(&h, 0), vec![1, 2, 4, 8, 16, 32]);
        assert_eq!(row(&h, 1), vec![4, 1, 2, 32, 8, 16]);
        let h = build_classical(8, 1_000_000, 2).unwrap();
        assert_eq!(row(&h, 0), vec![1, 2, 4, 8, 16, 32, 64, 128]);
    }

    #[test]
    fn exponents_reduce_mod_p() {
        let h = build_classical(6, 5, 2).unwrap();
        assert_eq!(row(&h, 0), vec![1, 2, 4, 3, 1, 2]);
    }

    #[test]
    fn parameter_errors() {
        assert!(build_classical(7, 49, 2).is_err());
        assert!(build_classical_half(5, 49, 2).is_err());
        assert!(build_classical(2, 49, 2).is_err());
        assert!(build_classical(6, 1, 2).is_err());
        assert!(build_classical(6, 49, 1).is_err());
        assert!(build_sc_pair(6, 49, 2, 0).is_err());
        assert!(build_sc_pair(4, 49, 2, 2).is_err());
    }

    #[test]
    fn l4_is_constructible() {
        let h = build_classical(4, 1000, 2).unwrap();
        assert_eq!(row(&h, 0), vec![1, 2, 4, 8]);
        assert_eq!(row(&h, 1), vec![2, 1, 8, 4]);
    }

    #[test]
    fn l6_p49_pair() {
        let (hx, hz) = build_orthogonal_pair(6, 49, 2).unwrap();
        assert_eq!(hx, build_classical(6, 49, 2).unwrap());
        assert_eq!(row(&hz, 0), vec![41, 17, 33, 48, 45, 47]);
        assert_eq!(row(&hz, 1), vec![33, 41, 17, 47, 48, 45]);
    }

    #[test]
    fn base_n_consistency() {
        for l in [4, 6, 8, 10] {
            for p in [5, 49, 138, 1000] {
                let a = build_classical(l, p, 2).unwrap();
                let params = ConstructionParams::new(l, p).with_base(2);
                assert_eq!(build_pair(&params).unwrap().0, a);
            }
        }
    }

    #[test]
    fn sc_single_section_is_the_plain_pair() {
        assert_eq!(build_sc_pair(6, 49, 2, 1).unwrap(), build_orthogonal_pair(6, 49, 2).unwrap());
    }

    #[test]
    fn sc_layout() {
        let (hx, hz) = build_sc_pair(6, 4160, 2, 2).unwrap();
        assert_eq!((hx.rows(), hx.cols()), (3, 12));
        // section 1 row-0 left half uses 2^(l+L)
        assert_eq!(
            (6..9).map(|c| hx.get(1, c).unwrap()).collect::<Vec<_>>(),
            vec![64, 128, 256]
        );
        assert!(hx.get(2, 0).is_none() && hx.get(0, 6).is_none());
        // Z: section 0 in rows {1,2}, section 1 in rows {0,1}
        assert!(hz.get(0, 0).is_none() && hz.get(1, 0).is_some() && hz.get(2, 0).is_some());
        assert!(hz.get(0, 6).is_some() && hz.get(2, 6).is_none());
        let hx_e = hx.expand();
        assert_eq!(hx_e.nrows(), 3 * 4160);
        assert_eq!(hx_e.ncols(), 12 * 4160);
    }

    #[test]
    fn orthogonality_exhaustive_small() {
        for l in [4, 6, 8, 10] {
            let ps = (5..=64).chain([49, 138, 128]);
            for p in ps {
                let (hx, hz) = build_orthogonal_pair(l, p, 2).unwrap();
                assert!(multiply_transpose_gf2(&hx.expand(), &hz.expand()).unwrap().is_zero(), "L={l} P={p}");
                if l >= 6 {
                    for nc in 1..=3 {
                        let (hx, hz) = build_sc_pair(l, p, 2, nc).unwrap();
                        assert!(multiply_transpose_gf2(&hx.expand(), &hz.expand()).unwrap().is_zero());
                    }
                }
            }
        }
        for base in [3, 5] {
            let (hx, hz) = build_orthogonal_pair(6, 1000, base).unwrap();
            assert!(multiply_transpose_gf2(&hx.expand(), &hz.expand()).unwrap().is_zero());
        }
    }

    #[test]
    fn determinism() {
        let a = build_sc_pair(8, 138, 2, 3).unwrap();
        let b = build_sc_pair(8, 138, 2, 3).unwrap();
        assert_eq!(a.0.to_json(), b.0.to_json());
        assert_eq!(a.1.to_json(), b.1.to_json());
    }

    #[test]
    fn bounds() {
        assert_eq!(bound_p0(6, 2).unwrap(), 128);
        assert_eq!(bound_p0(16, 2).unwrap(), 131072);
        assert_eq!(bound_p1(6, 2).unwrap(), 4160);
        assert_eq!(bound_p0(6, 3).unwrap(), 2 * 243);
        assert_eq!(bound_p1(6, 3).unwrap(), 2 * 243 * 730);
        assert_eq!(bound_p0_general(6, 2).unwrap(), 64);
        assert!(matches!(bound_p0(70, 2), Err(Error::Overflow(_))));
        assert!(matches!(bound_p1(40, 2), Err(Error::Overflow(_))));
        assert!(matches!(bound_p1(30, 7), Err(Error::Overflow(_))));
    }
}
