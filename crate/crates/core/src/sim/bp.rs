//! Syndrome-conditioned sum-product over GF(2) in the LLR domain.

use crate::sparse::SparseBinaryMatrix;

/// Result of one decoding run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded<T> {
    pub estimate: Vec<T>,
    /// The estimate reproduces the input syndrome.
    pub converged: bool,
    /// Iterations run; 0 when the initial hard decision already fits.
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BpOptions {
    pub max_iters: usize,
    pub clip: f64,
}

impl Default for BpOptions {
    fn default() -> Self {
        BpOptions {
            max_iters: 50,
            clip: 30.0,
        }
    }
}

/// Flooding-schedule decoder bound to one parity-check matrix.
#[derive(Debug, Clone)]
pub struct BinaryBp {
    nrows: usize,
    ncols: usize,
    /// Variable of each edge, in row-major entry order.
    edge_col: Vec<usize>,
    /// Edges of each check, and of each variable.
    check_edges: Vec<Vec<usize>>,
    var_edges: Vec<Vec<usize>>,
}

impl BinaryBp {
    pub fn new(h: &SparseBinaryMatrix) -> Self {
        let mut check_edges = vec![Vec::new(); h.nrows()];
        let mut var_edges = vec![Vec::new(); h.ncols()];
        let mut edge_col = Vec::new();
        for (k, &(r, c)) in h.entries().iter().enumerate() {
            edge_col.push(c);
            check_edges[r].push(k);
            var_edges[c].push(k);
        }
        BinaryBp {
            nrows: h.nrows(),
            ncols: h.ncols(),
            edge_col,
            check_edges,
            var_edges,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// `H v` over GF(2).
    pub fn syndrome(&self, v: &[u8]) -> Vec<u8> {
        self.check_edges
            .iter()
            .map(|edges| edges.iter().fold(0u8, |acc, &k| acc ^ v[self.edge_col[k]]))
            .collect()
    }

    fn syndrome_matches(&self, est: &[u8], synd: &[u8]) -> bool {
        self.check_edges.iter().zip(synd).all(|(edges, &s)| {
            edges.iter().fold(0u8, |acc, &k| acc ^ est[self.edge_col[k]]) == s
        })
    }

    /// Decodes `synd` with per-bit error probability `prior`.
    pub fn decode(&self, synd: &[u8], prior: f64, opts: BpOptions) -> Decoded<u8> {
        assert_eq!(synd.len(), self.nrows, "syndrome length");
        assert!(prior > 0.0 && prior <= 0.5, "prior must lie in (0, 0.5]");
        let clip = opts.clip;
        let l0 = ((1.0 - prior) / prior).ln().clamp(-clip, clip);
        let mut est = vec![0u8; self.ncols];
        if self.syndrome_matches(&est, synd) {
            return Decoded {
                estimate: est,
                converged: true,
                iterations: 0,
            };
        }
        let ne = self.edge_col.len();
        let mut v2c = vec![l0; ne];
        let mut c2v = vec![0.0f64; ne];
        let mut tanhs: Vec<f64> = Vec::new();
        let mut prefix: Vec<f64> = Vec::new();
        for it in 1..=opts.max_iters.max(1) {
            for (r, edges) in self.check_edges.iter().enumerate() {
                tanhs.clear();
                tanhs.extend(edges.iter().map(|&k| (v2c[k] / 2.0).tanh()));
                let sign = if synd[r] == 1 { -1.0 } else { 1.0 };
                // prefix[i] is the product of tanhs[..i]
                prefix.clear();
                prefix.push(1.0);
                for i in 1..tanhs.len() {
                    prefix.push(prefix[i - 1] * tanhs[i - 1]);
                }
                let mut suffix = 1.0;
                for (i, &k) in edges.iter().enumerate().rev() {
                    let prod = (prefix[i] * suffix).clamp(-1.0 + 1e-15, 1.0 - 1e-15);
                    c2v[k] = (sign * 2.0 * prod.atanh()).clamp(-clip, clip);
                    suffix *= tanhs[i];
                }
            }
            for (c, edges) in self.var_edges.iter().enumerate() {
                let total = l0 + edges.iter().map(|&k| c2v[k]).sum::<f64>();
                est[c] = u8::from(total < 0.0);
                for &k in edges {
                    v2c[k] = (total - c2v[k]).clamp(-clip, clip);
                }
            }
            if self.syndrome_matches(&est, synd) {
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
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_syndrome_decodes_to_zero_immediately() {
        let (x, _) = build_orthogonal_pair(6, 49, 2).unwrap();
        let h = x.expand();
        let bp = BinaryBp::new(&h);
        let d = bp.decode(&vec![0; h.nrows()], 0.01, BpOptions::default());
        assert!(d.converged);
        assert_eq!(d.iterations, 0);
        assert!(d.estimate.iter().all(|&b| b == 0));
    }

    #[test]
    fn every_single_error_is_recovered_quickly() {
        let (x, _) = build_orthogonal_pair(8, 138, 2).unwrap();
        let h = x.expand();
        let bp = BinaryBp::new(&h);
        for c in 0..h.ncols() {
            let mut e = vec![0u8; h.ncols()];
            e[c] = 1;
            let s = h.mul_vec(&e).unwrap();
            let d = bp.decode(&s, 0.05, BpOptions::default());
            assert!(d.converged && d.iterations <= 5, "column {c}");
            assert_eq!(d.estimate, e);
        }
    }

    #[test]
    fn weight_two_errors_mostly_recovered() {
        let (x, _) = build_orthogonal_pair(8, 138, 2).unwrap();
        let h = x.expand();
        let bp = BinaryBp::new(&h);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut ok = 0;
        for _ in 0..1000 {
            let mut e = vec![0u8; h.ncols()];
            let a = rng.gen_range(0..h.ncols());
            let mut b = rng.gen_range(0..h.ncols());
            while b == a {
                b = rng.gen_range(0..h.ncols());
            }
            e[a] = 1;
            e[b] = 1;
            let d = bp.decode(&h.mul_vec(&e).unwrap(), 0.05, BpOptions::default());
            ok += usize::from(d.estimate == e);
        }
        assert!(ok >= 990, "recovered {ok}/1000");
    }

    #[test]
    fn converged_means_syndrome_reproduced() {
        let (x, _) = build_orthogonal_pair(6, 49, 2).unwrap();
        let h = x.expand();
        let bp = BinaryBp::new(&h);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let e: Vec<u8> = (0..h.ncols()).map(|_| u8::from(rng.gen_bool(0.04))).collect();
            let s = h.mul_vec(&e).unwrap();
            let d = bp.decode(&s, 0.04, BpOptions::default());
            if d.converged {
                assert_eq!(h.mul_vec(&d.estimate).unwrap(), s);
            }
        }
    }
}
