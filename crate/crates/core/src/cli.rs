//! The `qclf` command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error.

use crate::alist::{parse_alist, write_alist};
use crate::construct::{bound_p0, build_classical, build_pair, ConstructionParams};
use crate::error::Error;
use crate::gf::FieldSpec;
use crate::girth::{find_cycle, girth_bfs_oracle, girth_with, min_p_search, min_p_search_with_jobs, Girth, GirthOptions};
use crate::nb::{check_extension_condition_for, extend_to_nb, write_gf_alist, NbMeta};
use crate::qc::QcBlockMatrix;
use crate::quantum::{check_orthogonal, girth_equal_check, witness_for_pair, PairLayout};
use crate::sim::{fer_experiment, to_csv, BpOptions, CodeLabel, CodePair, DecodeMode, FerConfig};
use crate::sparse::SparseBinaryMatrix;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const VIOLATION_LIMIT: usize = 100;

#[derive(Debug, Parser)]
#[command(name = "qclf", version, about = "Quantum QC-LDPC codes with column weight 2: construction, girth certification, verification and simulation")]
pub struct Cli {
    /// Refuse randomized runs that lack an explicit --seed.
    #[arg(long, global = true)]
    pub require_seed: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a parity-check matrix or an orthogonal pair.
    Construct(ConstructArgs),
    /// Certify the girth of a matrix.
    Girth(GirthArgs),
    /// Find the smallest circulant size giving girth 12.
    SearchMinP(SearchArgs),
    /// Check orthogonality, isomorphism, girth equality and the extension condition.
    Verify(VerifyArgs),
    /// Estimate frame-error rates on a depolarizing channel.
    Simulate(SimulateArgs),
}

/// Construction parameters; used wherever a matrix can be built in place.
#[derive(Debug, Args, Clone)]
pub struct CodeArgs {
    /// Block columns per section (even).
    #[arg(long = "L")]
    pub l: Option<usize>,
    /// Circulant size.
    #[arg(long = "P")]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 2)]
    pub base: u64,
    /// Number of coupled sections.
    #[arg(long)]
    pub nc: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Emit both H_X and H_Z.
    #[arg(long)]
    pub pair: bool,
    #[arg(long)]
    pub out_json: Option<PathBuf>,
    #[arg(long)]
    pub out_alist: Option<PathBuf>,
    /// Also label the pair over GF(2^e).
    #[arg(long)]
    pub nb_e: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct GirthArgs {
    /// JSON block descriptor or alist file.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub code: CodeArgs,
    /// Certify H_Z instead of H_X when building from parameters.
    #[arg(long)]
    pub z: bool,
    /// Cross-check with breadth-first search on the expanded graph.
    #[arg(long)]
    pub oracle: bool,
    /// Also enumerate walks that cannot close in two-row matrices.
    #[arg(long)]
    pub strict: bool,
    /// Longest cycle length searched.
    #[arg(long, default_value_t = 12)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// A value, an inclusive even range `6..16`, or a list `6,8,10`.
    #[arg(long = "L")]
    pub l: String,
    #[arg(long, default_value_t = 2)]
    pub base: u64,
    #[arg(long, default_value_t = 2)]
    pub min_p: u64,
    /// Defaults to the girth-12 guarantee bound for each L.
    #[arg(long)]
    pub max_p: Option<u64>,
    #[arg(long, env = "QCLF_JOBS")]
    pub jobs: Option<usize>,
    /// Results are appended; a header is written to new files.
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub in_x: Option<PathBuf>,
    #[arg(long)]
    pub in_z: Option<PathBuf>,
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long)]
    pub orthogonality: bool,
    #[arg(long)]
    pub isomorphism: bool,
    #[arg(long)]
    pub girth_equal: bool,
    #[arg(long)]
    pub extension_condition: bool,
    /// Print every violation instead of the first hundred.
    #[arg(long)]
    pub full_violations: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Binary,
    Qary,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub in_x: Option<PathBuf>,
    #[arg(long)]
    pub in_z: Option<PathBuf>,
    #[command(flatten)]
    pub code: CodeArgs,
    /// Comma-separated depolarizing probabilities.
    #[arg(long, value_delimiter = ',', required = true)]
    pub p_grid: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Binary)]
    pub mode: ModeArg,
    /// Field degree for q-ary mode.
    #[arg(long, default_value_t = 2)]
    pub e: u32,
    #[arg(long, default_value_t = 50)]
    pub max_iters: usize,
    /// Count any syndrome-matching estimate as success (exploratory only).
    #[arg(long)]
    pub syndrome_only: bool,
    #[arg(long, env = "QCLF_JOBS")]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
}

/// Outcome of a subcommand that did not succeed.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotOrthogonal(_)
            | Error::ExtensionCondition(_)
            | Error::Inconsistent(_)
            | Error::NoWitness(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` and runs the command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let require_seed = cli.require_seed;
    let out = match cli.command {
        Command::Construct(a) => construct(a, require_seed),
        Command::Girth(a) => girth_cmd(a),
        Command::SearchMinP(a) => search(a),
        Command::Verify(a) => verify(a),
        Command::Simulate(a) => simulate(a, require_seed),
    };
    match out {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            EXIT_CHECK_FAILED
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    usage(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn resolve_seed(seed: Option<u64>, require: bool) -> std::result::Result<u64, Failure> {
    match seed {
        Some(s) => Ok(s),
        None if require => Err(usage("--require-seed is set but no --seed was given")),
        None => Ok(0),
    }
}

impl CodeArgs {
    fn params(&self) -> std::result::Result<ConstructionParams, Failure> {
        let (Some(l), Some(p)) = (self.l, self.p) else {
            return Err(usage("--L and --P are required"));
        };
        let mut params = ConstructionParams::new(l, p).with_base(self.base);
        if let Some(nc) = self.nc {
            params = params.with_coupling(nc);
        }
        params.validate()?;
        Ok(params)
    }

    fn meta(&self) -> serde_json::Value {
        json!({"L": self.l, "P": self.p, "base": self.base, "nc": self.nc})
    }
}

fn warn_small_l(l: usize) {
    if l < 6 {
        eprintln!("warning: L = {l} carries no girth-12 guarantee; L = 4 always has 8-cycles");
    }
}

/// A matrix read from disk: block structure when available.
enum Loaded {
    Qc(QcBlockMatrix),
    Sparse(SparseBinaryMatrix),
}

impl Loaded {
    fn expand(&self) -> SparseBinaryMatrix {
        match self {
            Loaded::Qc(m) => m.expand(),
            Loaded::Sparse(m) => m.clone(),
        }
    }
}

fn load(path: &Path) -> std::result::Result<Loaded, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let in_file = |e: Error| usage(format!("{}: {e}", path.display()));
    if text.trim_start().starts_with('{') {
        QcBlockMatrix::from_json(&text).map(Loaded::Qc).map_err(in_file)
    } else {
        parse_alist(&text).map(Loaded::Sparse).map_err(in_file)
    }
}

/// `dir/name.ext` with `_tag` appended to the stem.
fn tagged(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{tag}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{tag}"),
    };
    path.with_file_name(name)
}

/// Sidecar `dir/stem.meta.json`.
fn meta_path(path: &Path) -> PathBuf {
    path.with_extension("meta.json")
}

fn metadata(command: &str, params: serde_json::Value, seed: Option<u64>) -> String {
    let v = json!({
        "tool": "qclf",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "params": params,
        "seed": seed,
    });
    serde_json::to_string_pretty(&v).expect("metadata serializes") + "\n"
}

fn construct(a: ConstructArgs, require_seed: bool) -> CmdResult {
    let params = a.code.params()?;
    warn_small_l(params.l);
    let matrices: Vec<(&str, QcBlockMatrix)> = if a.pair {
        let (x, z) = build_pair(&params)?;
        vec![("x", x), ("z", z)]
    } else if params.coupling.is_some() {
        vec![("", build_pair(&params)?.0)]
    } else {
        vec![("", build_classical(params.l, params.p, params.base)?)]
    };
    let seed = match a.nb_e {
        Some(_) => Some(resolve_seed(a.seed, require_seed)?),
        None => a.seed,
    };
    let mut meta = a.code.meta();
    meta["pair"] = json!(a.pair);
    meta["nb_e"] = json!(a.nb_e);
    let name = |base: &Path, tag: &str| if tag.is_empty() { base.to_path_buf() } else { tagged(base, tag) };

    if a.out_json.is_none() && a.out_alist.is_none() {
        if a.nb_e.is_some() {
            return Err(usage("--nb-e needs --out-json or --out-alist"));
        }
        for (_, m) in &matrices {
            println!("{}", m.to_json());
        }
        return Ok(EXIT_OK);
    }
    for (tag, m) in &matrices {
        if let Some(p) = &a.out_json {
            let path = name(p, tag);
            write_file(&path, &(m.to_json() + "\n"))?;
            println!("wrote {}", path.display());
        }
        if let Some(p) = &a.out_alist {
            let path = name(p, tag);
            write_file(&path, &write_alist(&m.expand()))?;
            println!("wrote {}", path.display());
        }
    }
    if let Some(e) = a.nb_e {
        if !a.pair {
            return Err(usage("--nb-e requires --pair"));
        }
        let field = FieldSpec::default_for(e)?;
        let seed = seed.expect("resolved above");
        let (gamma, delta) = extend_to_nb(&matrices[0].1, &matrices[1].1, &field, seed)?;
        let stem = a
            .out_alist
            .as_ref()
            .or(a.out_json.as_ref())
            .expect("an output path is set")
            .with_extension("");
        for (tag, m) in [("x", &gamma), ("z", &delta)] {
            let path = tagged(&stem, tag).with_extension("gf.alist");
            write_file(&path, &write_gf_alist(m))?;
            println!("wrote {}", path.display());
        }
        let nb = NbMeta {
            e,
            primitive_poly: field.poly(),
            seed,
        };
        let path = stem.with_extension("nb.json");
        write_file(&path, &(serde_json::to_string_pretty(&nb).expect("serializes") + "\n"))?;
        println!("wrote {}", path.display());
    }
    for p in a.out_json.iter().chain(&a.out_alist) {
        write_file(&meta_path(p), &metadata("construct", meta.clone(), seed))?;
    }
    Ok(EXIT_OK)
}

fn girth_cmd(a: GirthArgs) -> CmdResult {
    let loaded = match &a.input {
        Some(p) => load(p)?,
        None => {
            let params = a.code.params()?;
            warn_small_l(params.l);
            let m = if params.coupling.is_some() || a.z {
                let (x, z) = build_pair(&params)?;
                if a.z {
                    z
                } else {
                    x
                }
            } else {
                build_classical(params.l, params.p, params.base)?
            };
            Loaded::Qc(m)
        }
    };
    let m = match loaded {
        Loaded::Qc(m) => m,
        Loaded::Sparse(h) => {
            // no block structure: only the search on the expanded graph applies
            match girth_bfs_oracle(&h) {
                Some(g) => println!("girth: {g} (breadth-first search)"),
                None => println!("girth: none (acyclic)"),
            }
            return Ok(EXIT_OK);
        }
    };
    if a.cap < 4 || a.cap % 2 != 0 {
        return Err(usage("--cap must be an even number >= 4"));
    }
    let g = girth_with(&m, GirthOptions { cap: a.cap, strict: a.strict });
    println!("girth: {g}");
    if let Some(n) = g.exact() {
        if n < 12 {
            if let Some(cert) = find_cycle(&m, n / 2)? {
                println!("certificate: {}", serde_json::to_string(&cert.to_json()).expect("serializes"));
            }
        }
    }
    if a.oracle {
        let o = girth_bfs_oracle(&m.expand());
        let agree = match g {
            Girth::Exact(n) => o == Some(n),
            Girth::Exceeds(c) => o.map_or(true, |v| v > c),
        };
        println!("oracle: {}", o.map_or("none (acyclic)".to_string(), |v| v.to_string()));
        println!("agreement: {}", if agree { "yes" } else { "no" });
        if !agree {
            return Ok(EXIT_CHECK_FAILED);
        }
    }
    Ok(EXIT_OK)
}

/// Parses `6`, `6..16` (even values inclusive) or `6,8,10`.
fn parse_l_spec(s: &str) -> std::result::Result<Vec<usize>, Failure> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| usage(format!("bad L value '{t}'")));
    let mut out = if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi)?);
        (lo..=hi).filter(|l| l % 2 == 0).collect()
    } else {
        s.split(',').map(num).collect::<std::result::Result<Vec<_>, _>>()?
    };
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(usage(format!("no L values in '{s}'")));
    }
    Ok(out)
}

fn search(a: SearchArgs) -> CmdResult {
    let ls = parse_l_spec(&a.l)?;
    let mut rows = Vec::new();
    for l in ls {
        warn_small_l(l);
        let max_p = match a.max_p {
            Some(m) => m,
            None => bound_p0(l, a.base)?,
        };
        let found = match a.jobs {
            Some(j) => min_p_search_with_jobs(l, a.base, a.min_p, max_p, j)?,
            None => min_p_search(l, a.base, a.min_p, max_p)?,
        };
        let shown = found.map_or("none-in-range".to_string(), |p| p.to_string());
        println!("L={l} base={} range={}..={max_p} P_min={shown}", a.base, a.min_p);
        rows.push(format!("{l},{},{},{max_p},{shown}", a.base, a.min_p));
    }
    if let Some(path) = &a.out_csv {
        let fresh = !path.exists();
        let mut f = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| io_err(path, e))?;
        let mut text = String::new();
        if fresh {
            text.push_str("L,base,min_p,max_p,p_min\n");
        }
        for r in rows {
            text.push_str(&r);
            text.push('\n');
        }
        f.write_all(text.as_bytes()).map_err(|e| io_err(path, e))?;
    }
    Ok(EXIT_OK)
}

fn load_pair(
    in_x: &Option<PathBuf>,
    in_z: &Option<PathBuf>,
    code: &CodeArgs,
) -> std::result::Result<(Loaded, Loaded, Option<ConstructionParams>), Failure> {
    match (in_x, in_z) {
        (Some(x), Some(z)) => Ok((load(x)?, load(z)?, None)),
        (None, None) => {
            let params = code.params()?;
            warn_small_l(params.l);
            let (x, z) = build_pair(&params)?;
            Ok((Loaded::Qc(x), Loaded::Qc(z), Some(params)))
        }
        _ => Err(usage("give both --in-x and --in-z, or construction parameters")),
    }
}

fn show_violations(v: &[(usize, usize)], full: bool) -> String {
    let shown = if full { v.len() } else { v.len().min(VIOLATION_LIMIT) };
    let mut s: Vec<String> = v[..shown].iter().map(|(r, c)| format!("({r},{c})")).collect();
    if shown < v.len() {
        s.push(format!("... {} more", v.len() - shown));
    }
    s.join(" ")
}

fn verify(a: VerifyArgs) -> CmdResult {
    let (x, z, _) = load_pair(&a.in_x, &a.in_z, &a.code)?;
    let all = !(a.orthogonality || a.isomorphism || a.girth_equal || a.extension_condition);
    let mut ok = true;
    let mut report = |name: &str, pass: bool, detail: String| {
        ok &= pass;
        let tag = if pass { "PASS" } else { "FAIL" };
        if detail.is_empty() {
            println!("{name}: {tag}");
        } else {
            println!("{name}: {tag} {detail}");
        }
    };
    let (sx, sz) = (x.expand(), z.expand());

    if all || a.orthogonality {
        let check = check_orthogonal(&sx, &sz)?;
        let detail = if check.is_ok() {
            String::new()
        } else {
            format!(
                "{} nonzero entries: {}",
                check.violations.len(),
                show_violations(&check.violations, a.full_violations)
            )
        };
        report("orthogonality", check.is_ok(), detail);
    }
    let blocks = match (&x, &z) {
        (Loaded::Qc(bx), Loaded::Qc(bz)) => Some((bx, bz)),
        _ => None,
    };
    if all || a.isomorphism {
        match blocks {
            Some((bx, _)) => {
                let outcome = PairLayout::infer(bx).and_then(|layout| witness_for_pair(&sx, &sz, &layout));
                match outcome {
                    Ok(w) => {
                        let inv = w.is_involution();
                        let kind = if w.literal { "literal constants" } else { "recovered constants" };
                        report(
                            "isomorphism",
                            inv,
                            format!(
                                "row constant {}, column constant {} ({kind}); involution: {}",
                                w.row_constant,
                                w.col_constant,
                                if inv { "yes" } else { "no" }
                            ),
                        );
                    }
                    Err(e) => report("isomorphism", false, e.to_string()),
                }
            }
            None if a.isomorphism => return Err(usage("--isomorphism needs JSON block descriptors")),
            None => {}
        }
    }
    if all || a.girth_equal {
        match blocks {
            Some((bx, bz)) => {
                let (eq, gx, gz) = girth_equal_check(bx, bz);
                report("girth-equal", eq, format!("H_X {gx}, H_Z {gz}"));
            }
            None => {
                let (gx, gz) = (girth_bfs_oracle(&sx), girth_bfs_oracle(&sz));
                let show = |g: Option<usize>| g.map_or("none".to_string(), |v| v.to_string());
                report("girth-equal", gx == gz, format!("H_X {}, H_Z {}", show(gx), show(gz)));
            }
        }
    }
    if all || a.extension_condition {
        match blocks {
            Some((bx, _)) => {
                let c = check_extension_condition_for(bx)?;
                let detail = if c.is_empty() {
                    String::new()
                } else {
                    let shown: Vec<String> = c
                        .iter()
                        .take(if a.full_violations { c.len() } else { VIOLATION_LIMIT })
                        .map(|(l, lp, k, kp)| format!("(l={l},l'={lp},k={k},k'={kp})"))
                        .collect();
                    format!("{} collisions: {}", c.len(), shown.join(" "))
                };
                report("extension-condition", c.is_empty(), detail);
            }
            None if a.extension_condition => {
                return Err(usage("--extension-condition needs JSON block descriptors"))
            }
            None => {}
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn simulate(a: SimulateArgs, require_seed: bool) -> CmdResult {
    let seed = resolve_seed(a.seed, require_seed)?;
    let (x, z, params) = load_pair(&a.in_x, &a.in_z, &a.code)?;
    let e = match a.mode {
        ModeArg::Binary => 1,
        ModeArg::Qary => a.e,
    };
    let (l, p, nc) = match (&params, &x) {
        (Some(pr), _) => (pr.l, pr.p, pr.coupling.unwrap_or(0)),
        (None, Loaded::Qc(m)) => {
            let layout = PairLayout::infer(m)?;
            (layout.l, layout.p, if layout.sections > 1 { layout.sections } else { 0 })
        }
        (None, Loaded::Sparse(_)) => (0, 0, 0),
    };
    let nb = match (a.mode, &x, &z) {
        (ModeArg::Binary, _, _) => None,
        (ModeArg::Qary, Loaded::Qc(bx), Loaded::Qc(bz)) => {
            let field = FieldSpec::default_for(e)?;
            let (g, d) = extend_to_nb(bx, bz, &field, seed)?;
            Some((g, d, field))
        }
        (ModeArg::Qary, _, _) => return Err(usage("q-ary mode needs JSON block descriptors or parameters")),
    };
    let code = CodePair {
        label: CodeLabel { l, p, e, nc },
        hx: x.expand(),
        hz: z.expand(),
        nb,
    };
    let cfg = FerConfig {
        p_grid: a.p_grid.clone(),
        trials: a.trials,
        seed,
        mode: match a.mode {
            ModeArg::Binary => DecodeMode::Binary,
            ModeArg::Qary => DecodeMode::Qary,
        },
        bp: BpOptions {
            max_iters: a.max_iters,
            ..BpOptions::default()
        },
        syndrome_only: a.syndrome_only,
        jobs: a.jobs,
    };
    let records = fer_experiment(&code, &cfg)?;
    if a.syndrome_only {
        eprintln!("note: syndrome-only accounting credits degenerate corrections; not an exact-match FER");
    }
    println!("{:>10} {:>8} {:>9} {:>12} {:>12}", "p", "trials", "failures", "fer", "ci95");
    for r in &records {
        println!("{:>10} {:>8} {:>9} {:>12.6e} {:>12.6e}", r.p, r.trials, r.failures, r.fer, r.ci95);
    }
    if let Some(path) = &a.out_csv {
        write_file(path, &to_csv(&records))?;
        let mut meta = a.code.meta();
        meta["L"] = json!(l);
        meta["P"] = json!(p);
        meta["e"] = json!(e);
        meta["p_grid"] = json!(a.p_grid);
        meta["trials"] = json!(a.trials);
        meta["mode"] = json!(records.first().map(|r| r.mode.clone()));
        meta["max_iters"] = json!(a.max_iters);
        meta["in_x"] = json!(a.in_x);
        meta["in_z"] = json!(a.in_z);
        write_file(&meta_path(path), &metadata("simulate", meta, Some(seed)))?;
        println!("wrote {}", path.display());
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l_specs() {
        assert_eq!(parse_l_spec("6").unwrap(), vec![6]);
        assert_eq!(parse_l_spec("6..12").unwrap(), vec![6, 8, 10, 12]);
        assert_eq!(parse_l_spec("10,6,8").unwrap(), vec![6, 8, 10]);
        assert!(parse_l_spec("x").is_err());
    }

    #[test]
    fn output_naming() {
        assert_eq!(tagged(Path::new("out/pair.json"), "x"), PathBuf::from("out/pair_x.json"));
        assert_eq!(meta_path(Path::new("out/pair.json")), PathBuf::from("out/pair.meta.json"));
        assert_eq!(meta_path(Path::new("fer.csv")), PathBuf::from("fer.meta.json"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["qclf", "construct", "--L", "5", "--P", "49"]), EXIT_USAGE);
        assert_eq!(run(["qclf", "bogus"]), EXIT_USAGE);
        assert_eq!(run(["qclf", "simulate", "--L", "6", "--P", "49", "--p-grid", "0", "--require-seed"]), EXIT_USAGE);
    }
}
