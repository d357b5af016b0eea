use super::path::{is_simple_cycle, BlockPath, CycleCertificate};
use crate::construct::build_classical;
use crate::error::{Error, Result};
use crate::qc::QcBlockMatrix;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::ControlFlow;

/// Longest half-length the enumerator accepts (cycles of length 12).
pub const MAX_HALF_LENGTH: usize = 6;

/// Result of a girth computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Girth {
    /// The shortest cycle has exactly this length.
    Exact(usize),
    /// No cycle of length up to and including this value exists.
    Exceeds(usize),
}

impl Girth {
    pub fn exact(&self) -> Option<usize> {
        match *self {
            Girth::Exact(g) => Some(g),
            Girth::Exceeds(_) => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Exact(g) => write!(f, "{g}"),
            Girth::Exceeds(c) => write!(f, ">{c}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GirthOptions {
    /// Longest cycle length to look for.
    pub cap: usize,
    /// Also enumerate odd half-lengths for two-row matrices, where they
    /// cannot close.
    pub strict: bool,
}

impl Default for GirthOptions {
    fn default() -> Self {
        GirthOptions { cap: 12, strict: false }
    }
}

/// Cached block structure for the depth-first walk enumeration.
struct Grid<'a> {
    m: &'a QcBlockMatrix,
    p: u64,
    row_support: Vec<Vec<usize>>,
    col_support: Vec<Vec<usize>>,
}

impl<'a> Grid<'a> {
    fn new(m: &'a QcBlockMatrix) -> Self {
        Grid {
            m,
            p: m.modulus(),
            row_support: (0..m.rows()).map(|j| m.row_support(j)).collect(),
            col_support: (0..m.cols()).map(|l| m.column_support(l)).collect(),
        }
    }

    fn shift(&self, c: (usize, usize)) -> u64 {
        self.m.get(c.0, c.1).expect("walk stays on nonempty blocks")
    }

    /// Visits every closed walk of `n` row moves and `n` column moves with
    /// `b* = 0` whose first corner is its smallest. Each cycle is reached
    /// at least once, from its smallest corner.
    fn zero_walks<F>(&self, n: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[(usize, usize)]) -> ControlFlow<()>,
    {
        let mut corners = Vec::with_capacity(2 * n);
        for j in 0..self.m.rows() {
            for &l in &self.row_support[j] {
                corners.clear();
                corners.push((j, l));
                let acc = self.shift((j, l));
                self.extend(n, &mut corners, acc, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    fn extend<F>(&self, n: usize, corners: &mut Vec<(usize, usize)>, acc: u64, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[(usize, usize)]) -> ControlFlow<()>,
    {
        let p = self.p;
        let k = corners.len();
        let start = corners[0];
        let last = corners[k - 1];
        if k % 2 == 1 {
            // move along row `last.0`
            if k == 2 * n - 1 {
                let target = (last.0, start.1);
                if last.1 == start.1 || last.0 == start.0 || self.m.get(target.0, target.1).is_none() || target < start {
                    return ControlFlow::Continue(());
                }
                if (acc + p - self.shift(target)) % p == 0 {
                    corners.push(target);
                    let r = visit(corners);
                    corners.pop();
                    return r;
                }
                return ControlFlow::Continue(());
            }
            for &l in &self.row_support[last.0] {
                let c = (last.0, l);
                if l == last.1 || c < start {
                    continue;
                }
                corners.push(c);
                let r = self.extend(n, corners, (acc + p - self.shift(c)) % p, visit);
                corners.pop();
                r?;
            }
        } else {
            // move along column `last.1`
            for &j in &self.col_support[last.1] {
                let c = (j, last.1);
                if j == last.0 || c < start {
                    continue;
                }
                corners.push(c);
                let r = self.extend(n, corners, (acc + self.shift(c)) % p, visit);
                corners.pop();
                r?;
            }
        }
        ControlFlow::Continue(())
    }
}

fn check_half_length(n: usize) -> Result<()> {
    if !(2..=MAX_HALF_LENGTH).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "half-length must be in 2..={MAX_HALF_LENGTH}, got {n}"
        )));
    }
    Ok(())
}

/// Calls `visit` on simple `2n`-cycles (as canonical certificates) until it
/// breaks. A cycle may be reported more than once.
fn visit_cycles<F>(m: &QcBlockMatrix, n: usize, mut visit: F)
where
    F: FnMut(CycleCertificate) -> ControlFlow<()>,
{
    let grid = Grid::new(m);
    let _ = grid.zero_walks(n, &mut |corners: &[(usize, usize)]| {
        let path = BlockPath::from_corners(corners.to_vec()).expect("enumerated walks alternate");
        if is_simple_cycle(m, &path).expect("nonempty blocks") {
            visit(CycleCertificate::new_unchecked(path.canonical()))
        } else {
            ControlFlow::Continue(())
        }
    });
}

/// First `2n`-cycle certificate in enumeration order, if any.
pub fn find_cycle(m: &QcBlockMatrix, n: usize) -> Result<Option<CycleCertificate>> {
    check_half_length(n)?;
    let mut found = None;
    visit_cycles(m, n, |c| {
        found = Some(c);
        ControlFlow::Break(())
    });
    Ok(found)
}

/// Every distinct `2n`-cycle of the block structure, canonicalized and
/// sorted. Each entry stands for the `P` lifted cycles of one block walk.
pub fn cycle_classes(m: &QcBlockMatrix, n: usize) -> Result<Vec<CycleCertificate>> {
    check_half_length(n)?;
    let mut set: BTreeSet<BlockPath> = BTreeSet::new();
    visit_cycles(m, n, |c| {
        set.insert(c.path().clone());
        ControlFlow::Continue(())
    });
    Ok(set.into_iter().map(CycleCertificate::new_unchecked).collect())
}

/// Girth with the default cap of 12.
pub fn girth(m: &QcBlockMatrix) -> Girth {
    girth_with(m, GirthOptions::default())
}

pub fn girth_with(m: &QcBlockMatrix, opts: GirthOptions) -> Girth {
    let max_n = (opts.cap / 2).min(MAX_HALF_LENGTH);
    // Any full grid with at least 2 rows and 3 columns has a 12-cycle.
    let bounded = m.is_full() && m.rows() >= 2 && m.cols() >= 3;
    let last_n = if bounded { max_n.min(MAX_HALF_LENGTH - 1) } else { max_n };
    for n in 2..=last_n {
        if m.rows() == 2 && n % 2 == 1 && !opts.strict {
            continue;
        }
        if let Some(c) = find_cycle(m, n).expect("half-length in range") {
            debug_assert!(m.rows() != 2 || n % 2 == 0, "odd cycle in a two-row grid");
            return Girth::Exact(c.length());
        }
    }
    if bounded && opts.cap >= 12 {
        Girth::Exact(12)
    } else {
        Girth::Exceeds(2 * max_n)
    }
}

/// Where a cycle of a coupled matrix lives relative to its sections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SpanClass {
    Within,
    Adjacent,
    NonAdjacent,
}

impl SpanClass {
    pub fn of(path: &BlockPath, section_cols: usize) -> SpanClass {
        let mut s: Vec<usize> = path.columns().iter().map(|l| l / section_cols).collect();
        s.dedup();
        match s.as_slice() {
            [_] => SpanClass::Within,
            [a, b] if b - a == 1 => SpanClass::Adjacent,
            _ => SpanClass::NonAdjacent,
        }
    }
}

/// Number of distinct `2n`-cycles in each span class, sections being runs of
/// `section_cols` block columns.
pub fn spans_by_class(m: &QcBlockMatrix, n: usize, section_cols: usize) -> Result<BTreeMap<SpanClass, usize>> {
    let mut out: BTreeMap<SpanClass, usize> = [SpanClass::Within, SpanClass::Adjacent, SpanClass::NonAdjacent]
        .into_iter()
        .map(|c| (c, 0))
        .collect();
    for c in cycle_classes(m, n)? {
        *out.get_mut(&SpanClass::of(c.path(), section_cols)).expect("all classes present") += 1;
    }
    Ok(out)
}

/// Smallest `P` in `[p_lo, p_hi]` for which the classical matrix has girth
/// 12, scanning every candidate.
pub fn min_p_search(l: usize, base: u64, p_lo: u64, p_hi: u64) -> Result<Option<u64>> {
    let p_lo = p_lo.max(2);
    build_classical(l, p_lo, base)?;
    let threads = rayon::current_num_threads().max(1);
    let chunk = (16 * threads) as u64;
    let mut lo = p_lo;
    while lo <= p_hi {
        let hi = (lo + chunk - 1).min(p_hi);
        let hit = (lo..=hi)
            .into_par_iter()
            .filter(|&p| {
                let m = build_classical(l, p, base).expect("validated parameters");
                girth(&m) == Girth::Exact(12)
            })
            .min();
        if hit.is_some() {
            return Ok(hit);
        }
        lo = hi + 1;
    }
    Ok(None)
}

/// [`min_p_search`] on a dedicated pool of `jobs` workers.
pub fn min_p_search_with_jobs(l: usize, base: u64, p_lo: u64, p_hi: u64, jobs: usize) -> Result<Option<u64>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    pool.install(|| min_p_search(l, base, p_lo, p_hi))
}
