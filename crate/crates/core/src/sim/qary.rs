//! q-ary syndrome sum-product for labelled matrices over GF(2^e), `e <= 4`.
//!
//! Check updates are convolutions over the additive group of GF(q), done in
//! the Walsh-Hadamard domain after permuting each message by its label.

use super::bp::{BpOptions, Decoded};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::nb::GfMatrix;

pub const MAX_QARY_DEGREE: u32 = 4;

fn wht(v: &mut [f64]) {
    let n = v.len();
    let mut h = 1;
    while h < n {
        for i in (0..n).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

fn normalize(v: &mut [f64]) {
    for x in v.iter_mut() {
        if !(*x > 0.0) {
            *x = 0.0;
        }
    }
    let s: f64 = v.iter().sum();
    if s > 0.0 && s.is_finite() {
        v.iter_mut().for_each(|x| *x /= s);
    } else {
        let u = 1.0 / v.len() as f64;
        v.iter_mut().for_each(|x| *x = u);
    }
}

/// Prior of a symbol whose `e` bits flip independently with probability `pb`.
pub fn symbol_prior(e: u32, pb: f64) -> Vec<f64> {
    (0..1u32 << e)
        .map(|a| {
            let w = a.count_ones() as i32;
            pb.powi(w) * (1.0 - pb).powi(e as i32 - w)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct QaryBp {
    field: FieldSpec,
    q: usize,
    nrows: usize,
    ncols: usize,
    edge_col: Vec<usize>,
    edge_label: Vec<u32>,
    check_edges: Vec<Vec<usize>>,
    var_edges: Vec<Vec<usize>>,
}

impl QaryBp {
    pub fn new(h: &GfMatrix, field: &FieldSpec) -> Result<Self> {
        if field.e() > MAX_QARY_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "q-ary decoding supports e <= {MAX_QARY_DEGREE}, got {}",
                field.e()
            )));
        }
        if h.field() != field.meta() {
            return Err(Error::FieldMismatch(h.field().e, field.e()));
        }
        let mut check_edges = vec![Vec::new(); h.nrows()];
        let mut var_edges = vec![Vec::new(); h.ncols()];
        let (mut edge_col, mut edge_label) = (Vec::new(), Vec::new());
        for (k, &((r, c), v)) in h.entries().iter().enumerate() {
            edge_col.push(c);
            edge_label.push(v);
            check_edges[r].push(k);
            var_edges[c].push(k);
        }
        Ok(QaryBp {
            field: field.clone(),
            q: field.order() as usize,
            nrows: h.nrows(),
            ncols: h.ncols(),
            edge_col,
            edge_label,
            check_edges,
            var_edges,
        })
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// `H e` over GF(q).
    pub fn syndrome(&self, e: &[u32]) -> Vec<u32> {
        self.check_edges
            .iter()
            .map(|edges| {
                edges
                    .iter()
                    .fold(0, |acc, &k| acc ^ self.field.mul(self.edge_label[k], e[self.edge_col[k]]))
            })
            .collect()
    }

    pub fn decode(&self, synd: &[u32], prior: &[f64], opts: BpOptions) -> Decoded<u32> {
        self.decode_observed(synd, prior, opts, |_, _| {})
    }

    /// Decodes while handing the flat variable-to-check and check-to-variable
    /// message arrays (`q` values per edge) to `observe` after each iteration.
    pub fn decode_observed(
        &self,
        synd: &[u32],
        prior: &[f64],
        opts: BpOptions,
        mut observe: impl FnMut(&[f64], &[f64]),
    ) -> Decoded<u32> {
        let q = self.q;
        assert_eq!(synd.len(), self.nrows, "syndrome length");
        assert_eq!(prior.len(), q, "prior length");
        let mut prior = prior.to_vec();
        normalize(&mut prior);
        let mut est = vec![0u32; self.ncols];
        if self.syndrome(&est) == synd {
            return Decoded {
                estimate: est,
                converged: true,
                iterations: 0,
            };
        }
        let ne = self.edge_col.len();
        let mut v2c: Vec<f64> = prior.iter().copied().cycle().take(ne * q).collect();
        let mut c2v = vec![0.0f64; ne * q];
        let mut spectra: Vec<Vec<f64>> = Vec::new();
        let mut acc = vec![0.0f64; q];
        for it in 1..=opts.max_iters.max(1) {
            for (r, edges) in self.check_edges.iter().enumerate() {
                spectra.clear();
                for &k in edges {
                    let mut u = vec![0.0f64; q];
                    for a in 0..q {
                        u[self.field.mul(self.edge_label[k], a as u32) as usize] = v2c[k * q + a];
                    }
                    wht(&mut u);
                    spectra.push(u);
                }
                for (i, &k) in edges.iter().enumerate() {
                    acc.iter_mut().for_each(|x| *x = 1.0);
                    for (j, s) in spectra.iter().enumerate() {
                        if j != i {
                            acc.iter_mut().zip(s).for_each(|(x, y)| *x *= y);
                        }
                    }
                    wht(&mut acc);
                    // acc is q times the distribution of the other terms' sum
                    let out = &mut c2v[k * q..(k + 1) * q];
                    for a in 0..q {
                        let need = synd[r] ^ self.field.mul(self.edge_label[k], a as u32);
                        out[a] = acc[need as usize];
                    }
                    normalize(out);
                }
            }
            for (c, edges) in self.var_edges.iter().enumerate() {
                let mut total = prior.clone();
                for &k in edges {
                    total.iter_mut().zip(&c2v[k * q..(k + 1) * q]).for_each(|(x, y)| *x *= y);
                }
                normalize(&mut total);
                est[c] = (0..q)
                    .max_by(|&a, &b| total[a].total_cmp(&total[b]).then(b.cmp(&a)))
                    .expect("q >= 2") as u32;
                for &k in edges {
                    let out = &mut v2c[k * q..(k + 1) * q];
                    out.copy_from_slice(&prior);
                    for &k2 in edges {
                        if k2 != k {
                            out.iter_mut().zip(&c2v[k2 * q..(k2 + 1) * q]).for_each(|(x, y)| *x *= y);
                        }
                    }
                    normalize(out);
                }
            }
            observe(&v2c, &c2v);
            if self.syndrome(&est) == synd {
                return Decoded {
                    estimate: est,
                    converged: true,
                    iterations: it,
                };
            }
        }
        Decoded {
            estimate: est,
            converged: false,
            iterations: opts.max_iters.max(1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_orthogonal_pair;
    use crate::nb::extend_to_nb;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn code(e: u32) -> (GfMatrix, FieldSpec) {
        let (x, z) = build_orthogonal_pair(6, 49, 2).unwrap();
        let f = FieldSpec::default_for(e).unwrap();
        let (g, _) = extend_to_nb(&x, &z, &f, 4).unwrap();
        (g, f)
    }

    #[test]
    fn wht_is_self_inverse_up_to_scale() {
        let mut v = vec![0.1, 0.2, 0.3, 0.4];
        wht(&mut v);
        wht(&mut v);
        for (a, b) in v.iter().zip([0.4, 0.8, 1.2, 1.6]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn symbol_prior_sums_to_one() {
        let p = symbol_prior(4, 0.03);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((p[0] - 0.97f64.powi(4)).abs() < 1e-15);
    }

    #[test]
    fn rejects_large_fields() {
        let (x, z) = build_orthogonal_pair(6, 49, 2).unwrap();
        let f = FieldSpec::default_for(8).unwrap();
        let (g, _) = extend_to_nb(&x, &z, &f, 4).unwrap();
        assert!(QaryBp::new(&g, &f).is_err());
    }

    #[test]
    fn single_symbol_errors_recovered() {
        for e in [2, 4] {
            let (g, f) = code(e);
            let bp = QaryBp::new(&g, &f).unwrap();
            let prior = symbol_prior(e, 0.02);
            for c in (0..g.ncols()).step_by(7) {
                for val in 1..f.order() {
                    let mut err = vec![0u32; g.ncols()];
                    err[c] = val;
                    let d = bp.decode(&bp.syndrome(&err), &prior, BpOptions::default());
                    assert!(d.converged, "e={e} c={c} val={val}");
                    assert_eq!(d.estimate, err);
                }
            }
        }
    }

    #[test]
    fn messages_stay_normalized() {
        let (g, f) = code(4);
        let bp = QaryBp::new(&g, &f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let err: Vec<u32> = (0..g.ncols())
            .map(|_| if rng.gen_bool(0.08) { rng.gen_range(1..16) } else { 0 })
            .collect();
        let opts = BpOptions {
            max_iters: 10,
            ..BpOptions::default()
        };
        let mut checked = 0;
        let d = bp.decode_observed(&bp.syndrome(&err), &symbol_prior(4, 0.05), opts, |v2c, c2v| {
            for m in v2c.chunks(16).chain(c2v.chunks(16)) {
                assert!((m.iter().sum::<f64>() - 1.0).abs() < 1e-9);
                assert!(m.iter().all(|&x| x >= 0.0));
            }
            checked += 1;
        });
        assert!(checked >= 1);
        if d.converged {
            assert_eq!(bp.syndrome(&d.estimate), bp.syndrome(&err));
        }
    }
}
