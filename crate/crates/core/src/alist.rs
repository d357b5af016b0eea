//! alist text format.
//!
//! Layout (indices 1-based, lists zero-padded to the maximum weight):
//!
//! ```text
//! ncols nrows
//! max_col_weight max_row_weight
//! <ncols column weights>
//! <nrows row weights>
//! <ncols lines: row indices of each column>
//! <nrows lines: column indices of each row>
//! ```
//!
//! The labelled variant used for GF(2^e) matrices writes each index as
//! `idx:val` with `val` in lowercase hex.

use crate::error::{Error, Result};
use crate::sparse::SparseBinaryMatrix;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A parsed alist, entries keyed by `(row, col)` with an optional label.
pub(crate) struct RawAlist {
    pub nrows: usize,
    pub ncols: usize,
    pub entries: BTreeMap<(usize, usize), Option<u32>>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Lines {
            inner: it.peekable(),
            last: 0,
        }
    }

    fn next_line(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        match self.inner.next() {
            Some((n, l)) => {
                self.last = n;
                Ok((n, l.split_whitespace().collect()))
            }
            None => Err(perr(self.last + 1, format!("unexpected end of input, expected {what}"))),
        }
    }

    fn numbers(&mut self, what: &str, count: usize) -> Result<(usize, Vec<usize>)> {
        let (n, toks) = self.next_line(what)?;
        if toks.len() != count {
            return Err(perr(
                n,
                format!("expected {count} value(s) for {what}, found {}", toks.len()),
            ));
        }
        let vals = toks
            .iter()
            .map(|t| t.parse::<usize>().map_err(|_| perr(n, format!("bad integer '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        Ok((n, vals))
    }
}

fn parse_index(tok: &str, line: usize) -> Result<(usize, Option<u32>)> {
    let (idx, val) = match tok.split_once(':') {
        Some((i, v)) => {
            let v = u32::from_str_radix(v, 16)
                .map_err(|_| perr(line, format!("bad hex label '{v}'")))?;
            (i, Some(v))
        }
        None => (tok, None),
    };
    let idx = idx
        .parse::<usize>()
        .map_err(|_| perr(line, format!("bad index '{idx}'")))?;
    Ok((idx, val))
}

pub(crate) fn parse_raw(text: &str) -> Result<RawAlist> {
    let mut lines = Lines::new(text);
    let (n, dims) = lines.numbers("dimensions", 2)?;
    let (ncols, nrows) = (dims[0], dims[1]);
    if ncols == 0 && nrows == 0 {
        return Err(perr(n, "empty dimensions"));
    }
    let (_, maxw) = lines.numbers("maximum weights", 2)?;
    let (max_cw, max_rw) = (maxw[0], maxw[1]);
    let (ncw, col_w) = lines.numbers("column weights", ncols)?;
    let (nrw, row_w) = lines.numbers("row weights", nrows)?;
    if col_w.iter().copied().max().unwrap_or(0) > max_cw {
        return Err(perr(ncw, "column weight exceeds declared maximum"));
    }
    if row_w.iter().copied().max().unwrap_or(0) > max_rw {
        return Err(perr(nrw, "row weight exceeds declared maximum"));
    }

    let mut from_cols: BTreeMap<(usize, usize), Option<u32>> = BTreeMap::new();
    for (c, &w) in col_w.iter().enumerate() {
        let (ln, toks) = lines.next_line("column list")?;
        let mut listed = 0;
        for t in toks {
            let (idx, val) = parse_index(t, ln)?;
            if idx == 0 {
                continue;
            }
            if idx > nrows {
                return Err(perr(ln, format!("row index {idx} out of range 1..={nrows}")));
            }
            if from_cols.insert((idx - 1, c), val).is_some() {
                return Err(perr(ln, format!("duplicate row index {idx}")));
            }
            listed += 1;
        }
        if listed != w {
            return Err(perr(
                ln,
                format!("column {} declares weight {w} but lists {listed}", c + 1),
            ));
        }
    }

    let mut from_rows: BTreeMap<(usize, usize), Option<u32>> = BTreeMap::new();
    for (r, &w) in row_w.iter().enumerate() {
        let (ln, toks) = lines.next_line("row list")?;
        let mut listed = 0;
        for t in toks {
            let (idx, val) = parse_index(t, ln)?;
            if idx == 0 {
                continue;
            }
            if idx > ncols {
                return Err(perr(ln, format!("column index {idx} out of range 1..={ncols}")));
            }
            if from_rows.insert((r, idx - 1), val).is_some() {
                return Err(perr(ln, format!("duplicate column index {idx}")));
            }
            listed += 1;
        }
        if listed != w {
            return Err(perr(
                ln,
                format!("row {} declares weight {w} but lists {listed}", r + 1),
            ));
        }
        for c in from_rows.range((r, 0)..(r + 1, 0)).map(|(&(_, c), _)| c) {
            if !from_cols.contains_key(&(r, c)) {
                return Err(perr(
                    ln,
                    format!("row {} lists column {} absent from the column lists", r + 1, c + 1),
                ));
            }
        }
    }
    if from_rows != from_cols {
        return Err(perr(lines.last, "row lists and column lists disagree"));
    }
    if let Some((ln, _)) = lines.inner.next() {
        return Err(perr(ln, "trailing content"));
    }
    Ok(RawAlist {
        nrows,
        ncols,
        entries: from_cols,
    })
}

/// Writes an alist from `(row, col) -> label` entries; labels, when present,
/// are emitted as `idx:hex`.
pub(crate) fn write_raw(nrows: usize, ncols: usize, entries: &BTreeMap<(usize, usize), Option<u32>>) -> String {
    let mut cols: Vec<Vec<(usize, Option<u32>)>> = vec![Vec::new(); ncols];
    let mut rows: Vec<Vec<(usize, Option<u32>)>> = vec![Vec::new(); nrows];
    for (&(r, c), &v) in entries {
        cols[c].push((r, v));
        rows[r].push((c, v));
    }
    let max_cw = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_rw = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    let join = |v: &mut String, it: &mut dyn Iterator<Item = String>| {
        let parts: Vec<String> = it.collect();
        v.push_str(&parts.join(" "));
        v.push('\n');
    };
    let _ = writeln!(out, "{ncols} {nrows}");
    let _ = writeln!(out, "{max_cw} {max_rw}");
    join(&mut out, &mut cols.iter().map(|c| c.len().to_string()));
    join(&mut out, &mut rows.iter().map(|r| r.len().to_string()));
    let fmt = |(i, v): (usize, Option<u32>)| match v {
        Some(v) => format!("{}:{:x}", i + 1, v),
        None => (i + 1).to_string(),
    };
    for (list, width) in cols.iter().map(|c| (c, max_cw)).chain(rows.iter().map(|r| (r, max_rw))) {
        let mut it = list
            .iter()
            .copied()
            .map(fmt)
            .chain(std::iter::repeat("0".to_string()).take(width.max(1) - list.len()));
        join(&mut out, &mut it);
    }
    out
}

pub fn write_alist(m: &SparseBinaryMatrix) -> String {
    let entries = m.entries().iter().map(|&p| (p, None)).collect();
    write_raw(m.nrows(), m.ncols(), &entries)
}

pub fn parse_alist(text: &str) -> Result<SparseBinaryMatrix> {
    let raw = parse_raw(text)?;
    if raw.entries.values().any(Option::is_some) {
        return Err(perr(0, "labelled entries in a binary alist"));
    }
    SparseBinaryMatrix::from_entries(raw.nrows, raw.ncols, raw.entries.into_keys())
}
