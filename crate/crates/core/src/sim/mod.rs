//! Depolarizing-channel Monte Carlo with syndrome decoding.
//!
//! A trial fails unless the decoded Pauli pattern equals the sampled one
//! exactly; degenerate corrections count as failures.

mod bp;
mod qary;

pub use bp::{BinaryBp, BpOptions, Decoded};
pub use qary::{symbol_prior, QaryBp, MAX_QARY_DEGREE};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::nb::{check_orthogonal_gfq, GfMatrix};
use crate::quantum::check_orthogonal;
use crate::sparse::SparseBinaryMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use std::time::Instant;

/// Pauli error on `n` qubits; `Y` sets both parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliError {
    pub x_part: Vec<u8>,
    pub z_part: Vec<u8>,
}

impl PauliError {
    pub fn identity(n: usize) -> Self {
        PauliError {
            x_part: vec![0; n],
            z_part: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.x_part.len()
    }

    pub fn weight(&self) -> usize {
        self.x_part.iter().zip(&self.z_part).filter(|&(&a, &b)| a | b != 0).count()
    }
}

/// Each qubit independently: `I` with `1 - p`, else `X`, `Y`, `Z` uniformly.
pub fn sample_error<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> PauliError {
    assert!((0.0..=1.0).contains(&p), "p must lie in [0, 1]");
    let mut err = PauliError::identity(n);
    for i in 0..n {
        if rng.gen::<f64>() < p {
            match rng.gen_range(0..3) {
                0 => err.x_part[i] = 1,
                1 => {
                    err.x_part[i] = 1;
                    err.z_part[i] = 1;
                }
                _ => err.z_part[i] = 1,
            }
        }
    }
    err
}

/// `(H_X z, H_Z x)`: X checks see the Z part and vice versa.
pub fn syndrome(hx: &SparseBinaryMatrix, hz: &SparseBinaryMatrix, err: &PauliError) -> Result<(Vec<u8>, Vec<u8>)> {
    Ok((hx.mul_vec(&err.z_part)?, hz.mul_vec(&err.x_part)?))
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(failures: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054f64;
    let n = trials as f64;
    let f = failures as f64 / n;
    let denom = 1.0 + z * z / n;
    let centre = (f + z * z / (2.0 * n)) / denom;
    let half = z / denom * (f * (1.0 - f) / n + z * z / (4.0 * n * n)).sqrt();
    let lo = if failures == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if failures == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecodeMode {
    /// X and Z parts decoded separately over GF(2).
    Binary,
    /// Symbols of `e` qubits decoded over GF(2^e), `e <= 4`.
    Qary,
}

/// Parameters identifying the code in the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeLabel {
    pub l: usize,
    pub p: u64,
    pub e: u32,
    /// 0 for an uncoupled pair.
    pub nc: usize,
}

/// A CSS pair ready for simulation. `nb` carries the labelled pair used by
/// the q-ary decoder.
#[derive(Debug, Clone)]
pub struct CodePair {
    pub label: CodeLabel,
    pub hx: SparseBinaryMatrix,
    pub hz: SparseBinaryMatrix,
    pub nb: Option<(GfMatrix, GfMatrix, FieldSpec)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FerConfig {
    pub p_grid: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub mode: DecodeMode,
    pub bp: BpOptions,
    /// Count a trial as a success whenever the syndrome is reproduced.
    pub syndrome_only: bool,
    pub jobs: Option<usize>,
}

impl FerConfig {
    pub fn new(p_grid: Vec<f64>, trials: u64, seed: u64) -> Self {
        FerConfig {
            p_grid,
            trials,
            seed,
            mode: DecodeMode::Binary,
            bp: BpOptions::default(),
            syndrome_only: false,
            jobs: None,
        }
    }

    fn mode_name(&self) -> String {
        let base = match self.mode {
            DecodeMode::Binary => "binary",
            DecodeMode::Qary => "qary",
        };
        if self.syndrome_only {
            format!("{base}-syndrome-only")
        } else {
            base.to_string()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FerRecord {
    pub code: CodeLabel,
    pub p: f64,
    pub trials: u64,
    pub failures: u64,
    pub fer: f64,
    pub ci95: f64,
    pub seed: u64,
    pub mode: String,
    /// Seconds; excluded from the CSV so reruns compare byte for byte.
    pub wall_time: f64,
}

pub const CSV_HEADER: &str = "L,P,e,nc,p,trials,failures,fer,ci95,seed,mode";

pub fn to_csv(records: &[FerRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{:.8},{:.8},{},{}",
            r.code.l, r.code.p, r.code.e, r.code.nc, r.p, r.trials, r.failures, r.fer, r.ci95, r.seed, r.mode
        );
    }
    out
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator of trial `trial` at grid point `point`; independent of
/// scheduling.
pub fn trial_rng(seed: u64, point: usize, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix(seed ^ splitmix(point as u64)));
    rng.set_stream(trial);
    rng
}

enum Decoders {
    Binary { x: BinaryBp, z: BinaryBp },
    Qary { x: QaryBp, z: QaryBp, e: u32 },
}

fn pack(bits: &[u8], e: u32) -> Vec<u32> {
    bits.chunks(e as usize)
        .map(|c| c.iter().enumerate().fold(0u32, |acc, (i, &b)| acc | (u32::from(b) << i)))
        .collect()
}

impl Decoders {
    /// Whether the trial fails.
    fn trial(&self, p: f64, rng: &mut ChaCha8Rng, opts: BpOptions, syndrome_only: bool) -> bool {
        let pb = (2.0 * p / 3.0).clamp(1e-9, 0.5);
        match self {
            Decoders::Binary { x, z } => {
                let n = x.ncols();
                let err = sample_error(n, p, rng);
                // X checks decode the Z part, Z checks the X part
                let dz = x.decode(&x.syndrome(&err.z_part), pb, opts);
                let dx = z.decode(&z.syndrome(&err.x_part), pb, opts);
                if syndrome_only {
                    !(dz.converged && dx.converged)
                } else {
                    dz.estimate != err.z_part || dx.estimate != err.x_part
                }
            }
            Decoders::Qary { x, z, e } => {
                let n = x.ncols();
                let err = sample_error(n * *e as usize, p, rng);
                let (xs, zs) = (pack(&err.x_part, *e), pack(&err.z_part, *e));
                let prior = symbol_prior(*e, pb);
                let dz = x.decode(&x.syndrome(&zs), &prior, opts);
                let dx = z.decode(&z.syndrome(&xs), &prior, opts);
                if syndrome_only {
                    !(dz.converged && dx.converged)
                } else {
                    dz.estimate != zs || dx.estimate != xs
                }
            }
        }
    }
}

/// Frame-error rates over `cfg.p_grid`. Refuses non-orthogonal pairs.
pub fn fer_experiment(code: &CodePair, cfg: &FerConfig) -> Result<Vec<FerRecord>> {
    let binary = check_orthogonal(&code.hx, &code.hz)?;
    if !binary.is_ok() {
        return Err(Error::NotOrthogonal(binary.violations.len()));
    }
    if let Some(&p) = cfg.p_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::InvalidParameter(format!("error probability {p} outside [0, 1]")));
    }
    let decoders = match cfg.mode {
        DecodeMode::Binary => Decoders::Binary {
            x: BinaryBp::new(&code.hx),
            z: BinaryBp::new(&code.hz),
        },
        DecodeMode::Qary => {
            let (g, d, field) = code
                .nb
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("q-ary mode needs a labelled pair".into()))?;
            let check = check_orthogonal_gfq(g, d, field)?;
            if !check.is_ok() {
                return Err(Error::NotOrthogonal(check.violations.len()));
            }
            Decoders::Qary {
                x: QaryBp::new(g, field)?,
                z: QaryBp::new(d, field)?,
                e: field.e(),
            }
        }
    };
    let run = || {
        cfg.p_grid
            .iter()
            .enumerate()
            .map(|(point, &p)| {
                let start = Instant::now();
                let failures = (0..cfg.trials)
                    .into_par_iter()
                    .filter(|&t| {
                        let mut rng = trial_rng(cfg.seed, point, t);
                        decoders.trial(p, &mut rng, cfg.bp, cfg.syndrome_only)
                    })
                    .count() as u64;
                let (lo, hi) = wilson_interval(failures, cfg.trials);
                FerRecord {
                    code: code.label,
                    p,
                    trials: cfg.trials,
                    failures,
                    fer: if cfg.trials == 0 { 0.0 } else { failures as f64 / cfg.trials as f64 },
                    ci95: (hi - lo) / 2.0,
                    seed: cfg.seed,
                    mode: cfg.mode_name(),
                    wall_time: start.elapsed().as_secs_f64(),
                }
            })
            .collect::<Vec<_>>()
    };
    match cfg.jobs {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
            Ok(pool.install(run))
        }
        None => Ok(run()),
    }
}
