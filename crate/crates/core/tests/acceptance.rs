//! Acceptance criteria. Each test writes one `PASS`/`FAIL` line to stderr
//! (bypassing output capture) and then asserts the criterion.

use qclf::construct::{
    bound_p0, bound_p1, build_classical, build_classical_half, build_orthogonal_pair, build_sc_pair,
    build_sc_pair_uniform, ConstructionParams,
};
use qclf::gf::FieldSpec;
use qclf::girth::{
    alternating_shift, find_cycle, girth, girth_bfs_oracle, min_p_search, spans_by_class, BlockPath, CycleCertificate,
    Girth, SpanClass,
};
use qclf::nb::{check_extension_condition, check_orthogonal_gfq, extend_to_nb};
use qclf::quantum::{check_orthogonal, isomorphism_witness};
use qclf::sim::{
    fer_experiment, sample_error, to_csv, trial_rng, BinaryBp, BpOptions, CodeLabel, CodePair, FerConfig,
};
use std::io::Write;

fn report(n: usize, name: &str, pass: bool, detail: &str) {
    let line = format!(
        "ACCEPTANCE {n:>2} {} {name}: {detail}\n",
        if pass { "PASS" } else { "FAIL" }
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

#[test]
fn criterion_01_min_p_table() {
    let expected = [(6, 49), (8, 138), (10, 281), (12, 355), (14, 609), (16, 821)];
    let mut found = Vec::new();
    for (l, _) in expected {
        let hi = bound_p0(l, 2).unwrap();
        found.push((l, min_p_search(l, 2, 2, hi).unwrap()));
    }
    let pass = found.iter().zip(&expected).all(|(&(_, f), &(_, e))| f == Some(e));
    let detail: Vec<String> = found
        .iter()
        .map(|(l, p)| format!("L={l}:{}", p.map_or("none".into(), |v| v.to_string())))
        .collect();
    report(1, "minimum circulant sizes", pass, &detail.join(" "));
}

#[test]
fn criterion_02_exponent_grids() {
    let (x, z) = build_orthogonal_pair(6, 49, 2).unwrap();
    let gx = vec![vec![1, 2, 4, 8, 16, 32], vec![4, 1, 2, 32, 8, 16]];
    let gz = vec![vec![41, 17, 33, 48, 45, 47], vec![33, 41, 17, 47, 48, 45]];
    let got = |m: &qclf::qc::QcBlockMatrix| (0..2).map(|j| m.shift_row(j)).collect::<Vec<_>>();
    let pass = got(&x) == gx && got(&z) == gz;
    report(2, "exponent grids at L=6, P=49", pass, &format!("H_X {:?} H_Z {:?}", got(&x), got(&z)));
}

#[test]
fn criterion_03_girth_twelve_at_bound() {
    let mut ok = true;
    let mut detail = Vec::new();
    for l in [6, 8, 10] {
        let p = 1u64 << (l + 1);
        let m = build_classical(l, p, 2).unwrap();
        let g = girth(&m);
        let o = girth_bfs_oracle(&m.expand());
        ok &= g == Girth::Exact(12) && o == Some(12);
        detail.push(format!("L={l},P={p}: certifier {g}, oracle {o:?}"));
    }
    report(3, "girth 12 at P = 2^(L+1)", ok, &detail.join("; "));
}

#[test]
fn criterion_04_l4_eight_cycle() {
    let path = BlockPath::from_corners(vec![(0, 0), (0, 2), (1, 2), (1, 1), (0, 1), (0, 3), (1, 3), (1, 0)]).unwrap();
    let mut ok = true;
    let mut detail = Vec::new();
    for p in [10, 49, 1000] {
        let m = build_classical(4, p, 2).unwrap();
        let found = find_cycle(&m, 4).unwrap();
        let b = alternating_shift(&m, &path).unwrap();
        let certified = CycleCertificate::new(&m, path.clone()).is_ok();
        ok &= found.is_some() && b == 0 && certified && girth(&m) == Girth::Exact(8);
        detail.push(format!("P={p}: 8-cycle found {}, b*={b}", found.is_some()));
    }
    report(4, "L=4 has 8-cycles", ok, &detail.join("; "));
}

#[test]
fn criterion_05_half_matrix_cycles() {
    let mut ok = true;
    let mut detail = Vec::new();
    for l in [6, 8, 10] {
        let p4 = 1u64 << (l / 2);
        let p8 = 1u64 << (l / 2 + 1);
        let no4 = find_cycle(&build_classical_half(l, p4, 2).unwrap(), 2).unwrap().is_none();
        let no8 = find_cycle(&build_classical_half(l, p8, 2).unwrap(), 4).unwrap().is_none();
        ok &= no4 && no8;
        detail.push(format!("L={l}: no 4-cycle at P={p4} {no4}, no 8-cycle at P={p8} {no8}"));
    }
    report(5, "half-matrix short cycles", ok, &detail.join("; "));
}

fn pair_parameter_set() -> Vec<ConstructionParams> {
    let pmin = [(6, 49), (8, 138), (10, 281)];
    let mut out = Vec::new();
    for (l, pm) in pmin {
        for p in [pm, 64, 1u64 << (l + 1)] {
            out.push(ConstructionParams::new(l, p));
        }
    }
    let p1 = bound_p1(6, 2).unwrap();
    for nc in [2, 3] {
        out.push(ConstructionParams::new(6, p1).with_coupling(nc));
    }
    out
}

#[test]
fn criterion_06_orthogonality() {
    let mut ok = true;
    let mut bad = Vec::new();
    let set = pair_parameter_set();
    for params in &set {
        let (x, z) = qclf::construct::build_pair(params).unwrap();
        let c = check_orthogonal(&x.expand(), &z.expand()).unwrap();
        if !c.is_ok() {
            ok = false;
            bad.push(format!("{params:?}"));
        }
    }
    let detail = if ok {
        format!("{} pairs orthogonal (incl. coupled n_c=2,3 at P=4160)", set.len())
    } else {
        format!("non-orthogonal: {}", bad.join(", "))
    };
    report(6, "orthogonality suite", ok, &detail);
}

#[test]
fn criterion_07_isomorphism() {
    let mut ok = true;
    let mut detail = Vec::new();
    for params in pair_parameter_set() {
        let (x, z) = qclf::construct::build_pair(&params).unwrap();
        match isomorphism_witness(&params) {
            Ok(w) => {
                let good = w.verifies(&x.expand(), &z.expand()) && w.is_involution();
                ok &= good;
                if !good || !w.literal {
                    detail.push(format!("L={} P={} literal={} verified={good}", params.l, params.p, w.literal));
                }
            }
            Err(e) => {
                ok = false;
                detail.push(format!("L={} P={}: {e}", params.l, params.p));
            }
        }
    }
    let detail = if detail.is_empty() {
        "all witnesses verified both ways, involutive, literal constants".to_string()
    } else {
        detail.join("; ")
    };
    report(7, "isomorphism witnesses", ok, &detail);
}

#[test]
fn criterion_08_finite_field_extension() {
    let mut ok = true;
    let mut runs = 0;
    let mut detail = Vec::new();
    for (l, p) in [(6, 49), (8, 138), (6, 128)] {
        let cond = check_extension_condition(l, p, 2).unwrap();
        if !cond.is_empty() {
            ok = false;
            detail.push(format!("condition fails at L={l},P={p}"));
        }
        let (x, z) = build_orthogonal_pair(l, p, 2).unwrap();
        let (xe, ze) = (x.expand(), z.expand());
        for e in [2, 4, 8] {
            let f = FieldSpec::default_for(e).unwrap();
            for seed in [11u64, 22, 33] {
                match extend_to_nb(&x, &z, &f, seed) {
                    Ok((g, d)) => {
                        let good = g.support() == xe
                            && d.support() == ze
                            && check_orthogonal_gfq(&g, &d, &f).unwrap().is_ok();
                        ok &= good;
                        runs += 1;
                        if !good {
                            detail.push(format!("L={l},P={p},e={e},seed={seed} not orthogonal"));
                        }
                    }
                    Err(err) => {
                        ok = false;
                        detail.push(format!("L={l},P={p},e={e},seed={seed}: {err}"));
                    }
                }
            }
        }
    }
    let detail = if detail.is_empty() {
        format!("condition holds; {runs} labelled pairs orthogonal over GF(2^e) with supports preserved")
    } else {
        detail.join("; ")
    };
    report(8, "finite-field extension", ok, &detail);
}

#[test]
fn criterion_09_coupled_girth() {
    let l = 6;
    let p = bound_p1(l, 2).unwrap();
    let mut ok = true;
    let mut detail = Vec::new();
    for nc in [2, 3] {
        let (x, _) = build_sc_pair(l, p, 2, nc).unwrap();
        let mut short = Vec::new();
        for n in 2..=5 {
            for (class, count) in spans_by_class(&x, n, l).unwrap() {
                if count > 0 {
                    short.push(format!("{} {class:?}-section {}-cycle classes", count, 2 * n));
                }
            }
        }
        let twelve = find_cycle(&x, 6).unwrap().is_some();
        ok &= short.is_empty() && twelve;
        detail.push(format!(
            "n_c={nc}: cycles <= 10 [{}], 12-cycle {}",
            if short.is_empty() { "none".to_string() } else { short.join(", ") },
            twelve
        ));
    }
    let (u, _) = build_sc_pair_uniform(l, p, 2, 2).unwrap();
    let control = spans_by_class(&u, 4, l).unwrap()[&SpanClass::Adjacent];
    detail.push(format!(
        "control (uniform exponents): {control} adjacent-section 8-cycle classes{}",
        if control == 0 { " (observation: none found)" } else { "" }
    ));
    report(9, "coupled girth at P=4160", ok, &detail.join("; "));
}

#[test]
fn criterion_10_oracle_equivalence() {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for l in [4, 6, 8] {
        for p in 5..=80u64 {
            let m = build_classical(l, p, 2).unwrap();
            let g = girth(&m);
            let o = girth_bfs_oracle(&m.expand());
            let agree = match g {
                Girth::Exact(v) => o == Some(v),
                Girth::Exceeds(c) => o.map_or(true, |v| v > c),
            };
            checked += 1;
            if !agree {
                mismatches.push(format!("L={l},P={p}: {g} vs {o:?}"));
            }
        }
    }
    let detail = if mismatches.is_empty() {
        format!("{checked} matrices agree")
    } else {
        mismatches.join("; ")
    };
    report(10, "certifier equals breadth-first search", mismatches.is_empty(), &detail);
}

fn code_8_138() -> CodePair {
    let (x, z) = build_orthogonal_pair(8, 138, 2).unwrap();
    CodePair {
        label: CodeLabel { l: 8, p: 138, e: 1, nc: 0 },
        hx: x.expand(),
        hz: z.expand(),
        nb: None,
    }
}

#[test]
fn criterion_11_decoder_properties() {
    let code = code_8_138();
    let n = code.hx.ncols();
    let mut ok = true;
    let mut detail = Vec::new();

    let zero = fer_experiment(&code, &FerConfig::new(vec![0.0], 10_000, 1)).unwrap();
    ok &= zero[0].failures == 0;
    detail.push(format!("fer(0)={}", zero[0].fer));

    let (bx, bz) = (BinaryBp::new(&code.hx), BinaryBp::new(&code.hz));
    let injections = 10_000u64;
    let mut recovered = 0u64;
    for t in 0..injections {
        let mut rng = trial_rng(99, 0, t);
        // one non-identity Pauli on one qubit
        let mut err = sample_error(1, 1.0, &mut rng);
        let q = (t as usize * 7919) % n;
        let mut full = qclf::sim::PauliError::identity(n);
        full.x_part[q] = err.x_part.remove(0);
        full.z_part[q] = err.z_part.remove(0);
        let dz = bz_decode(&bx, &full.z_part);
        let dx = bz_decode(&bz, &full.x_part);
        recovered += u64::from(dz == full.z_part && dx == full.x_part);
    }
    let rate = recovered as f64 / injections as f64;
    ok &= rate >= 0.999;
    detail.push(format!("single errors recovered {recovered}/{injections}"));

    let grid = vec![0.001, 0.003, 0.01, 0.03];
    let cfg = FerConfig::new(grid.clone(), 10_000, 2024);
    let recs = fer_experiment(&code, &cfg).unwrap();
    let ci = |i: usize| {
        let r = &recs[i];
        qclf::sim::wilson_interval(r.failures, r.trials)
    };
    let monotone = (0..recs.len() - 1).all(|i| recs[i + 1].fer >= recs[i].fer || ci(i + 1).1 >= ci(i).0);
    let separated = ci(0).1 < ci(recs.len() - 1).0;
    ok &= monotone && separated;
    let fers: Vec<String> = recs.iter().map(|r| format!("{}:{:.4}±{:.4}", r.p, r.fer, r.ci95)).collect();
    detail.push(format!("fer {}", fers.join(" ")));

    let again = fer_experiment(
        &code,
        &FerConfig {
            jobs: Some(3),
            ..cfg.clone()
        },
    )
    .unwrap();
    let identical = to_csv(&recs) == to_csv(&again);
    ok &= identical;
    detail.push(format!("csv identical on rerun {identical}"));
    report(11, "decoder properties", ok, &detail.join("; "));
}

fn bz_decode(bp: &BinaryBp, e: &[u8]) -> Vec<u8> {
    bp.decode(&bp.syndrome(e), 0.05, BpOptions::default()).estimate
}
