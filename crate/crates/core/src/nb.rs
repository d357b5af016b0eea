//! Non-binary extension of an orthogonal binary pair.
//!
//! Every nonzero entry of `H_X` gets a label `gamma = g^x` and every nonzero
//! entry of `H_Z` a label `delta = g^y`. For a J=2 pair, each X row `r` and Z
//! row `s` either share no column or share exactly two, `c1` and `c2`, and
//! the product entry vanishes iff
//!
//! ```text
//! x(r,c1) + y(s,c1) = x(r,c2) + y(s,c2)   (mod q - 1)
//! ```
//!
//! For a fixed Z row `s` these equations link the columns of `s` into
//! cycles. Walking a cycle determines `y` up to a free start value, and
//! closing it leaves one linear condition on `x`. Every X position sits in
//! exactly two such conditions (one per Z row through its column), so the
//! conditions form a signed graph whose edges are the X positions. The
//! solver spans that graph, draws the non-tree edges at random and solves
//! the tree edges from the leaves. A nonzero residual at a root is absorbed
//! by a non-tree edge whose coefficient is `±2`, which is invertible because
//! `q - 1` is odd.

use crate::alist::{parse_raw, write_raw};
use crate::error::{Error, Result};
use crate::gf::{FieldMeta, FieldSpec};
use crate::qc::QcBlockMatrix;
use crate::quantum::{check_orthogonal, OrthogonalityCheck, PairLayout};
use crate::sparse::SparseBinaryMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, VecDeque};

/// Sparse matrix over GF(2^e) with nonzero labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfMatrix {
    nrows: usize,
    ncols: usize,
    field: FieldMeta,
    entries: Vec<((usize, usize), u32)>,
}

impl GfMatrix {
    pub fn from_entries<I>(nrows: usize, ncols: usize, field: &FieldSpec, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), u32)>,
    {
        let mut map = BTreeMap::new();
        for ((row, col), v) in entries {
            if row >= nrows || col >= ncols {
                return Err(Error::OutOfRange {
                    row,
                    col,
                    nrows,
                    ncols,
                });
            }
            if v == 0 || !field.contains(v) {
                return Err(Error::InvalidParameter(format!(
                    "label {v:#x} at ({row}, {col}) is not a nonzero element of GF(2^{})",
                    field.e()
                )));
            }
            if map.insert((row, col), v).is_some() {
                return Err(Error::DuplicateEntry(row, col));
            }
        }
        Ok(GfMatrix {
            nrows,
            ncols,
            field: field.meta(),
            entries: map.into_iter().collect(),
        })
    }

    /// The binary matrix with every label set to 1.
    pub fn from_binary(m: &SparseBinaryMatrix, field: &FieldSpec) -> Self {
        GfMatrix {
            nrows: m.nrows(),
            ncols: m.ncols(),
            field: field.meta(),
            entries: m.entries().iter().map(|&p| (p, 1)).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn field(&self) -> FieldMeta {
        self.field
    }

    /// Entries sorted by `(row, col)`.
    pub fn entries(&self) -> &[((usize, usize), u32)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Option<u32> {
        self.entries
            .binary_search_by_key(&(row, col), |&(p, _)| p)
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// Replaces the label at an existing position.
    pub fn set_label(&mut self, row: usize, col: usize, value: u32) -> Result<()> {
        if value == 0 || value >= 1 << self.field.e {
            return Err(Error::InvalidParameter(format!("{value:#x} is not a nonzero label")));
        }
        let i = self
            .entries
            .binary_search_by_key(&(row, col), |&(p, _)| p)
            .map_err(|_| Error::InvalidParameter(format!("({row}, {col}) is not in the support")))?;
        self.entries[i].1 = value;
        Ok(())
    }

    pub fn support(&self) -> SparseBinaryMatrix {
        SparseBinaryMatrix::from_entries(self.nrows, self.ncols, self.entries.iter().map(|&(p, _)| p))
            .expect("labelled entries are distinct and in range")
    }
}

/// Metadata stored next to a labelled alist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NbMeta {
    pub e: u32,
    pub primitive_poly: u32,
    pub seed: u64,
}

pub fn write_gf_alist(m: &GfMatrix) -> String {
    let entries = m.entries.iter().map(|&(p, v)| (p, Some(v))).collect();
    write_raw(m.nrows, m.ncols, &entries)
}

pub fn parse_gf_alist(text: &str, field: &FieldSpec) -> Result<GfMatrix> {
    let raw = parse_raw(text)?;
    let mut entries = Vec::with_capacity(raw.entries.len());
    for (p, v) in raw.entries {
        let v = v.ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("entry ({}, {}) has no label", p.0 + 1, p.1 + 1),
        })?;
        entries.push((p, v));
    }
    GfMatrix::from_entries(raw.nrows, raw.ncols, field, entries)
}

/// Collisions `f_{l-k} + g_{-l+k'} = f_{l'-k} + g_{-l'+k'} (mod P)` over
/// `l < l'` and `k, k'` in `{0, 1}`, indices mod `f.len()`.
pub fn extension_collisions(f: &[u64], g: &[u64], p: u64) -> Vec<(usize, usize, usize, usize)> {
    let h = f.len();
    assert_eq!(h, g.len(), "shift sets must have equal size");
    let at = |v: &[u64], i: isize| v[i.rem_euclid(h as isize) as usize] % p;
    let mut out = Vec::new();
    for l in 0..h {
        for lp in l + 1..h {
            for k in 0..2 {
                for kp in 0..2 {
                    let (li, lpi, ki, kpi) = (l as isize, lp as isize, k as isize, kp as isize);
                    let a = (at(f, li - ki) + at(g, -li + kpi)) % p;
                    let b = (at(f, lpi - ki) + at(g, -lpi + kpi)) % p;
                    if a == b {
                        out.push((l, lp, k, kp));
                    }
                }
            }
        }
    }
    out
}

/// The condition for the uncoupled construction with `f_l = base^l` and
/// `g_l = base^(l + L/2)`.
pub fn check_extension_condition(l: usize, p: u64, base: u64) -> Result<Vec<(usize, usize, usize, usize)>> {
    if l < 2 || l % 2 != 0 || p < 2 {
        return Err(Error::InvalidParameter(format!("need even L >= 2 and P >= 2, got L={l}, P={p}")));
    }
    let (x, _) = crate::construct::build_orthogonal_pair(l, p, base)?;
    Ok(collisions_of_section(&x, 0, l))
}

fn collisions_of_section(x: &QcBlockMatrix, ic: usize, l: usize) -> Vec<(usize, usize, usize, usize)> {
    let h = l / 2;
    let row: Vec<u64> = (0..l)
        .map(|c| x.get(ic, ic * l + c).expect("section top row is full"))
        .collect();
    extension_collisions(&row[..h], &row[h..], x.modulus())
}

/// Condition over every section of a (possibly coupled) X matrix.
pub fn check_extension_condition_for(x: &QcBlockMatrix) -> Result<Vec<(usize, usize, usize, usize)>> {
    let layout = PairLayout::infer(x)?;
    let mut out = Vec::new();
    for ic in 0..layout.sections {
        if (0..layout.l).any(|c| x.get(ic, ic * layout.l + c).is_none()) {
            return Err(Error::InvalidParameter(format!("section {ic} has an empty block in its top row")));
        }
        out.extend(collisions_of_section(x, ic, layout.l));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Nonzero entries of `A B^T` over GF(2^e).
pub fn check_orthogonal_gfq(a: &GfMatrix, b: &GfMatrix, field: &FieldSpec) -> Result<OrthogonalityCheck> {
    for m in [a, b] {
        if m.field != field.meta() {
            return Err(Error::FieldMismatch(m.field.e, field.e()));
        }
    }
    if a.ncols != b.ncols {
        return Err(Error::DimensionMismatch(format!(
            "{} columns against {} columns",
            a.ncols, b.ncols
        )));
    }
    let mut b_cols: Vec<Vec<(usize, u32)>> = vec![Vec::new(); b.ncols];
    for &((s, c), v) in &b.entries {
        b_cols[c].push((s, v));
    }
    let mut a_rows: Vec<Vec<(usize, u32)>> = vec![Vec::new(); a.nrows];
    for &((r, c), v) in &a.entries {
        a_rows[r].push((c, v));
    }
    let violations = a_rows
        .par_iter()
        .enumerate()
        .flat_map_iter(|(r, row)| {
            let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
            for &(c, alpha) in row {
                for &(s, beta) in &b_cols[c] {
                    *acc.entry(s).or_insert(0) ^= field.mul(alpha, beta);
                }
            }
            acc.into_iter().filter(|&(_, v)| v != 0).map(move |(s, _)| (r, s))
        })
        .collect();
    Ok(OrthogonalityCheck { violations })
}

/// Labels an orthogonal QC pair over GF(2^e). Refuses pairs that fail the
/// extension condition or binary orthogonality.
pub fn extend_to_nb(hx: &QcBlockMatrix, hz: &QcBlockMatrix, field: &FieldSpec, seed: u64) -> Result<(GfMatrix, GfMatrix)> {
    let collisions = check_extension_condition_for(hx)?;
    if !collisions.is_empty() {
        return Err(Error::ExtensionCondition(collisions));
    }
    extend_sparse(&hx.expand(), &hz.expand(), field, seed)
}

/// Labels an arbitrary binary orthogonal pair whose row pairs overlap in
/// zero or two columns and whose columns have weight two (or zero).
pub fn extend_sparse(x: &SparseBinaryMatrix, z: &SparseBinaryMatrix, field: &FieldSpec, seed: u64) -> Result<(GfMatrix, GfMatrix)> {
    let binary = check_orthogonal(x, z)?;
    if !binary.is_ok() {
        return Err(Error::NotOrthogonal(binary.violations.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = field.group_order() as u64;
    let system = LabelSystem::build(x, z)?;
    let xs = system.solve_x(m, &mut rng)?;
    let ys = system.solve_y(&xs, m, &mut rng)?;
    let gamma = GfMatrix {
        nrows: x.nrows(),
        ncols: x.ncols(),
        field: field.meta(),
        entries: x.entries().iter().zip(&xs).map(|(&p, &v)| (p, field.exp(v))).collect(),
    };
    let delta = GfMatrix {
        nrows: z.nrows(),
        ncols: z.ncols(),
        field: field.meta(),
        entries: z.entries().iter().zip(&ys).map(|(&p, &v)| (p, field.exp(v))).collect(),
    };
    let check = check_orthogonal_gfq(&gamma, &delta, field)?;
    if !check.is_ok() {
        return Err(Error::Inconsistent(format!(
            "labelled product has {} nonzero entries, first at {:?}",
            check.violations.len(),
            check.violations[0]
        )));
    }
    Ok((gamma, delta))
}

/// One cycle of the column graph of Z row `s`: step `i` follows X row
/// `steps[i].1` from column `steps[i].0` to the next step's column.
struct ColumnCycle {
    s: usize,
    steps: Vec<(usize, usize)>,
}

struct LabelSystem<'a> {
    x: &'a SparseBinaryMatrix,
    z: &'a SparseBinaryMatrix,
    cycles: Vec<ColumnCycle>,
    /// For each X position: `(cycle, sign)` incidences.
    incidence: Vec<Vec<(usize, i8)>>,
}

fn position(m: &SparseBinaryMatrix, row: usize, col: usize) -> usize {
    m.entries()
        .binary_search(&(row, col))
        .expect("position lies in the support")
}

fn modneg(a: u64, m: u64) -> u64 {
    (m - a % m) % m
}

fn signed(a: u64, sign: i8, m: u64) -> u64 {
    if sign > 0 {
        a % m
    } else {
        modneg(a, m)
    }
}

impl<'a> LabelSystem<'a> {
    fn build(x: &'a SparseBinaryMatrix, z: &'a SparseBinaryMatrix) -> Result<Self> {
        let x_rows = x.row_lists();
        let z_rows = z.row_lists();
        let mut adj: Vec<HashMap<usize, Vec<(usize, usize)>>> = vec![HashMap::new(); z.nrows()];
        for ((r, s), count) in SparseBinaryMatrix::overlap_counts(x, z)? {
            if count != 2 {
                return Err(Error::Inconsistent(format!(
                    "X row {r} and Z row {s} share {count} columns; the solver needs 0 or 2"
                )));
            }
            let shared: Vec<usize> = x_rows[r]
                .iter()
                .copied()
                .filter(|c| z_rows[s].binary_search(c).is_ok())
                .collect();
            let (c1, c2) = (shared[0], shared[1]);
            adj[s].entry(c1).or_default().push((r, c2));
            adj[s].entry(c2).or_default().push((r, c1));
        }

        let mut cycles = Vec::new();
        for (s, cols) in z_rows.iter().enumerate() {
            let mut seen: HashMap<usize, bool> = HashMap::new();
            for &c0 in cols {
                let edges = adj[s].get(&c0).map_or(&[][..], Vec::as_slice);
                if edges.is_empty() || seen.contains_key(&c0) {
                    continue;
                }
                let mut steps = Vec::new();
                let (mut c, mut via) = (c0, usize::MAX);
                loop {
                    seen.insert(c, true);
                    let here = &adj[s][&c];
                    if here.len() != 2 {
                        return Err(Error::Inconsistent(format!(
                            "column {c} meets {} X rows overlapping Z row {s}; the solver needs 2",
                            here.len()
                        )));
                    }
                    let &(r, next) = here.iter().find(|&&(r, _)| r != via).expect("two distinct X rows");
                    steps.push((c, r));
                    c = next;
                    via = r;
                    if c == c0 {
                        break;
                    }
                }
                cycles.push(ColumnCycle { s, steps });
            }
        }

        let mut incidence = vec![Vec::new(); x.nnz()];
        for (k, cyc) in cycles.iter().enumerate() {
            let n = cyc.steps.len();
            for i in 0..n {
                let (c, r) = cyc.steps[i];
                let next = cyc.steps[(i + 1) % n].0;
                incidence[position(x, r, c)].push((k, 1));
                incidence[position(x, r, next)].push((k, -1));
            }
        }
        for (i, inc) in incidence.iter().enumerate() {
            if !inc.is_empty() && inc.len() != 2 {
                let (r, c) = x.entries()[i];
                return Err(Error::Inconsistent(format!(
                    "X position ({r}, {c}) appears in {} overlap cycles; the solver needs 2",
                    inc.len()
                )));
            }
        }
        Ok(LabelSystem {
            x,
            z,
            cycles,
            incidence,
        })
    }

    fn describe(&self, k: usize) -> String {
        let cyc = &self.cycles[k];
        let cols: Vec<usize> = cyc.steps.iter().map(|&(c, _)| c).collect();
        format!("overlap cycle of Z row {} through columns {:?}", cyc.s, cols)
    }

    /// Logs of the X labels, with every cycle closing to 0 mod `m`.
    fn solve_x(&self, m: u64, rng: &mut ChaCha8Rng) -> Result<Vec<u64>> {
        let nv = self.cycles.len();
        let mut by_vertex: Vec<Vec<(usize, i8)>> = vec![Vec::new(); nv];
        for (e, inc) in self.incidence.iter().enumerate() {
            for &(v, sign) in inc {
                by_vertex[v].push((e, sign));
            }
        }
        let mut t: Vec<u64> = (0..self.x.nnz()).map(|_| rng.gen_range(0..m)).collect();
        let mut parent_edge: Vec<Option<usize>> = vec![None; nv];
        let mut visited = vec![false; nv];
        let mut is_tree = vec![false; self.x.nnz()];
        for root in 0..nv {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let mut order = vec![root];
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &(e, _) in &by_vertex[v] {
                    let w = self.other_end(e, v);
                    if !visited[w] {
                        visited[w] = true;
                        parent_edge[w] = Some(e);
                        is_tree[e] = true;
                        order.push(w);
                        queue.push_back(w);
                    }
                }
            }

            let sign_at = |e: usize, v: usize| -> i8 {
                self.incidence[e].iter().find(|&&(u, _)| u == v).expect("incident").1
            };
            let solve = |t: &mut Vec<u64>| -> u64 {
                for &v in order.iter().skip(1).rev() {
                    let pe = parent_edge[v].expect("non-root has a parent edge");
                    let mut sum = 0u64;
                    for &(e, sign) in &by_vertex[v] {
                        if e != pe {
                            sum = (sum + signed(t[e], sign, m)) % m;
                        }
                    }
                    t[pe] = signed(sum, -sign_at(pe, v), m);
                }
                by_vertex[root].iter().fold(0, |acc, &(e, sign)| (acc + signed(t[e], sign, m)) % m)
            };

            let residual = solve(&mut t);
            if residual != 0 {
                let mut rho: HashMap<usize, i8> = HashMap::from([(root, 1)]);
                for &v in order.iter().skip(1) {
                    let pe = parent_edge[v].expect("non-root has a parent edge");
                    let parent = self.other_end(pe, v);
                    rho.insert(v, -rho[&parent] * sign_at(pe, parent) * sign_at(pe, v));
                }
                let fixer = order
                    .iter()
                    .flat_map(|&v| by_vertex[v].iter().map(|&(e, _)| e))
                    .filter(|&e| !is_tree[e])
                    .find_map(|e| {
                        let a: i8 = self.incidence[e].iter().map(|&(v, sign)| rho[&v] * sign).sum();
                        (a != 0).then_some((e, a))
                    });
                let Some((e, a)) = fixer else {
                    return Err(Error::Inconsistent(format!(
                        "{} cannot close: residual {residual} with no adjustable edge",
                        self.describe(root)
                    )));
                };
                // a = ±2 and m is odd, so (m+1)/2 inverts 2
                let inv_a = signed((m + 1) / 2, a.signum(), m);
                let delta = (residual as u128 * inv_a as u128 % m as u128) as u64;
                t[e] = (t[e] + modneg(delta, m)) % m;
                let again = solve(&mut t);
                if again != 0 {
                    return Err(Error::Inconsistent(format!(
                        "{} still has residual {again} after adjustment",
                        self.describe(root)
                    )));
                }
            }
        }
        Ok(t)
    }

    fn other_end(&self, e: usize, v: usize) -> usize {
        let inc = &self.incidence[e];
        if inc[0].0 == v {
            inc[1].0
        } else {
            inc[0].0
        }
    }

    /// Logs of the Z labels given the X logs.
    fn solve_y(&self, xs: &[u64], m: u64, rng: &mut ChaCha8Rng) -> Result<Vec<u64>> {
        let mut y: Vec<u64> = (0..self.z.nnz()).map(|_| rng.gen_range(0..m)).collect();
        for (k, cyc) in self.cycles.iter().enumerate() {
            let n = cyc.steps.len();
            let mut cur = y[position(self.z, cyc.s, cyc.steps[0].0)];
            for i in 0..n {
                let (c, r) = cyc.steps[i];
                let next = cyc.steps[(i + 1) % n].0;
                cur = (cur + xs[position(self.x, r, c)] + modneg(xs[position(self.x, r, next)], m)) % m;
                let slot = position(self.z, cyc.s, next);
                if i + 1 < n {
                    y[slot] = cur;
                } else if y[slot] != cur {
                    return Err(Error::Inconsistent(format!("{} does not close", self.describe(k))));
                }
            }
        }
        Ok(y)
    }
}
