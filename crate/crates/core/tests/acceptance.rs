//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest harness.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use proptest::prelude::Rng;
use proptest::test_runner::{RngAlgorithm, TestRng};
use serde_json::Value;
use zdkit::algebra::DEFAULT_MAX_ORDER;
use zdkit::reproduce::{self, Context, Status, Target};
use zdkit::{cli, codes, construct, dss, exact, fhs, io, zd};

use common::{fixtures, Instance};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn coset_construction() -> Outcome {
    let start = Instant::now();
    let out = cli::run(["zdkit", "--format", "json", "construct", "--family", "zn", "--n", "11", "--e", "5"]);
    let elapsed = start.elapsed();
    ensure(out.code == 0, || out.stderr.clone())?;
    let v: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let r = &v["results"];
    ensure(r["parameters"] == "(11, 3, 4)" && r["m"] == 3, || format!("parameters {}", r["parameters"]))?;
    ensure(r["lambda_min"] == 4 && r["lambda_max"] == 4, || "λ_α is not identically 4".into())?;
    ensure(r["blocks"] == "[5^2, 1]", || format!("blocks {}", r["blocks"]))?;
    let base = construct::family_zn(11, 5, DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?;
    let d = dss::build_dss(&base.table);
    let mut w = d.weights();
    w.sort_unstable();
    ensure(w == [1, 5, 5] && d.rho == 7, || format!("DSS weights {w:?}, ρ = {}", d.rho))?;
    ensure(elapsed.as_secs_f64() < 0.1, || format!("took {elapsed:?}"))?;
    Ok(format!("(11, 3, 4) ZDB, blocks [1, 5, 5], (11, [1, 5, 5], 7) DSS in {elapsed:.1?}"))
}

fn change_point_codes() -> Outcome {
    let base = construct::family_zn(11, 5, DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?;
    let cp = construct::change_point_zero(&base).map_err(|e| e.to_string())?;
    let stats = zd::preimage_stats(&cp.table);
    let c = zd::classify(&cp.spectrum, &stats);
    ensure(cp.table.m() == 2 && cp.spectrum.values == BTreeSet::from([5]), || {
        format!("m = {}, S = {:?}", cp.table.m(), cp.spectrum.values)
    })?;
    ensure(c.type_b == Some(5) && c.almost_balanced, || format!("{c:?}"))?;
    let mut found = Vec::new();
    for label in 0..2 {
        let code = codes::build_code(&cp.table.with_zero_label(label).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let w = code.constant_weight().ok_or("weights not constant")?;
        let cert = codes::cwc_certify(code.n, code.d, w, code.q, code.size());
        ensure(cert.optimal, || format!("weight {w} misses the CWC bound"))?;
        found.push(reproduce::format_cwc(&code));
    }
    found.sort();
    ensure(found == ["(11, 11, 6, 5)_2", "(11, 11, 6, 6)_2"], || format!("{found:?}"))?;
    Ok(format!("(11, 2, {{5}}) Type-B AB; {} both CWC-optimal", found.join(", ")))
}

fn printed_codes() -> Outcome {
    let expected = [("c1.txt", 3, 7, 10), ("c2.txt", 11, 20, 20), ("c3.txt", 2, 6, 5), ("c4.txt", 2, 6, 6)];
    let mut seen = Vec::new();
    for (name, q, d, w) in expected {
        let text = std::fs::read_to_string(fixtures().join(name)).map_err(|e| e.to_string())?;
        let doc = io::parse_code_text(&text, Some(q)).map_err(|e| e.to_string())?;
        let code = codes::verify_code(doc.words, doc.q).map_err(|e| e.to_string())?;
        ensure(code.d == d && code.constant_weight() == Some(w) && code.size() == code.n, || {
            format!("{name}: {}", reproduce::format_cwc(&code))
        })?;
        let cert = codes::cwc_certify(code.n, d, w, q, code.size());
        ensure(cert.optimal, || format!("{name}: bound {:?}", cert.bound))?;
        seen.push(reproduce::format_cwc(&code));
    }
    Ok(format!("{} each meet the CWC bound", seen.join(", ")))
}

fn printed_sequence() -> Outcome {
    let text = std::fs::read_to_string(fixtures().join("t1.txt")).map_err(|e| e.to_string())?;
    let seq = io::parse_sequence_text(&text).map_err(|e| e.to_string())?;
    let s = fhs::analyze_sequence(&seq).map_err(|e| e.to_string())?;
    let (c, bound) = fhs::lg_bound(52, 17).map_err(|e| e.to_string())?;
    ensure(seq.len() == 52 && s.m == 17 && s.h_max == 3, || format!("n = {}, m = {}, H = {}", seq.len(), s.m, s.h_max))?;
    ensure(c == exact::rational(1836, 867) && bound == 3, || format!("C = {c}, bound {bound}"))?;
    let cert = fhs::fhs_certify(s.h_max, s.c, 52, 17, false).map_err(|e| e.to_string())?;
    ensure(cert.optimal, || "not optimal".into())?;
    Ok("H_max = 3, ceil(1836/867) = 3, optimal".into())
}

fn dss_certification() -> Outcome {
    let base = construct::family_zn(11, 5, DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?;
    let d = dss::build_dss(&base.table);
    let bound = dss::dss_bound(11, 3, 7).map_err(|e| e.to_string())?;
    let cert = dss::dss_certify(11, 3, 4, Some(5)).map_err(|e| e.to_string())?;
    ensure(bound == 11 && d.tau() == 11 && d.perfect, || format!("bound {bound}, τ = {}", d.tau()))?;
    ensure(cert.optimal() && cert.optimal_iff && cert.bound_agrees, || format!("{cert:?}"))?;
    Ok("dss_bound(11, 3, 7) = 11 = τ, perfect, 11 >= 11".into())
}

/// Exhaustive below `FULL`, imported tables, and a fixed-seed sample of larger parameter sets.
const FULL: usize = 300;
const SAMPLE: usize = 24;

fn sampled_instances() -> Vec<Instance> {
    let zn = common::zn_pairs(FULL + 1, 2000);
    let fields = common::field_pairs(FULL + 1, 2000);
    let mut rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut out = Vec::new();
    for i in 0..SAMPLE {
        let pick = rng.next_u64() as usize;
        if i % 2 == 0 {
            let (n, e) = zn[pick % zn.len()];
            out.extend(common::zn_instances(n, e));
        } else {
            let (factors, e) = &fields[pick % fields.len()];
            out.extend(common::field_instances(factors, *e));
        }
    }
    out
}

fn identity_suite() -> Outcome {
    let mut instances = common::all_instances(3, FULL);
    let exhaustive = instances.len();
    instances.extend(common::imported_instances(500));
    let imported = instances.len() - exhaustive;
    let sample = sampled_instances();
    let largest = sample.iter().map(|i| i.table.n()).max().unwrap_or(0);
    instances.extend(sample);
    let failures: Vec<String> = instances.iter().flat_map(common::check_instance).collect();
    ensure(failures.is_empty(), || format!("{} failures, first: {}", failures.len(), failures[0]))?;
    Ok(format!(
        "{} tables: {exhaustive} with n <= {FULL}, {imported} imported, {} sampled up to n = {largest}; zero failures",
        instances.len(),
        instances.len() - exhaustive - imported
    ))
}

fn parameters_up_to(limit: usize) -> BTreeSet<(usize, usize, usize)> {
    let mut instances = common::all_instances(3, limit);
    instances.extend(common::imported_instances(limit));
    instances
        .iter()
        .map(|i| (i.table.n(), i.table.m(), zd::zd_spectrum(&i.table).unwrap().max))
        .collect()
}

fn predicate_sweep() -> Outcome {
    let params = parameters_up_to(500);
    let mut disagreements = Vec::new();
    for &(n, m, lambda) in &params {
        if m < 2 {
            continue;
        }
        let iff = n + m >= m * lambda + 2;
        let meets = dss::dss_bound(n, m, n - lambda).unwrap() == n as u128;
        if iff != meets {
            disagreements.push(format!("DSS ({n}, {m}, {lambda})"));
        }
        let (c, ceil) = fhs::lg_bound(n, m).unwrap();
        let gap = exact::integer(lambda as i128) - c;
        let by_gap = gap >= exact::integer(0) && gap < exact::integer(1);
        if by_gap != (lambda as i128 == ceil) {
            disagreements.push(format!("FHS ({n}, {m}, {lambda})"));
        }
    }
    ensure(disagreements.is_empty(), || format!("{disagreements:?}"))?;
    Ok(format!("{} parameter triples with 3 <= n <= 500, zero disagreements", params.len()))
}

fn ccc_contrapositive() -> Outcome {
    let mut instances = common::all_instances(3, 500);
    instances.extend(common::imported_instances(500));
    let (mut checked, mut built, mut unbounded) = (0, 0, 0);
    let mut violations = Vec::new();
    for inst in &instances {
        let f = &inst.table;
        let s = zd::zd_spectrum(f).unwrap();
        if s.values.len() < 2 {
            continue;
        }
        checked += 1;
        let n = f.n();
        let sizes = zd::preimage_stats(f).sizes;
        let (d, size) = if n <= common::CODE_LIMIT {
            built += 1;
            let code = codes::build_code(f).unwrap();
            (code.d, code.size())
        } else {
            (n - s.max, n)
        };
        // a nonpositive denominator leaves the size unbounded, so the code cannot meet a bound
        match codes::ccc_bound(n, d, &sizes) {
            Some(b) if exact::integer(size as i128) < b => {}
            None => unbounded += 1,
            Some(b) => violations.push(format!("{}: size {size}, bound {b}", inst.name)),
        }
    }
    ensure(violations.is_empty(), || format!("{} violations, first {}", violations.len(), violations[0]))?;
    Ok(format!(
        "{checked} non-ZDB tables ({built} codes built): {} strictly below a finite CCC bound, {unbounded} with no finite bound; zero violations",
        checked - unbounded
    ))
}

fn context(n_limit: usize) -> Context {
    Context {
        max_order: DEFAULT_MAX_ORDER,
        fixtures: fixtures(),
        n_limit,
    }
}

fn discrepancies() -> Outcome {
    let rows = reproduce::reproduce(Target::Examples, &context(64));
    let find = |id: &str| rows.iter().find(|r| r.id == id).ok_or(format!("missing row {id}"));
    let dss45 = find("example/dss-45-even-k")?;
    ensure(dss45.status == Status::Discrepancy, || format!("{:?}", dss45.status))?;
    for part in ["S = {3, 5}", "rho = 40", "bound 44"] {
        ensure(dss45.computed.contains(part), || format!("computed lacks {part}: {}", dss45.computed))?;
    }
    let lam = find("example/fhs-family-lambda")?;
    ensure(lam.status == Status::Discrepancy && lam.computed.contains("lambda = 3"), || lam.computed.clone())?;
    Ok(format!("DSS example: {}; FHS λ: {}", dss45.computed, lam.computed))
}

fn table_rows() -> Outcome {
    let ctx = context(500);
    let mut summary = Vec::new();
    for (target, families) in [
        (Target::TableDss, &["table-dss/fields/", "table-dss/type-a-cyclic/", "table-dss/type-a-product/"][..]),
        (Target::TableFhs, &["table-fhs/type-a-cyclic/"][..]),
    ] {
        let rows = reproduce::reproduce(target, &ctx);
        for row in &rows {
            match row.status {
                Status::Pass => {}
                Status::Skip if row.id.contains("/cited-") => {}
                _ => return Err(format!("{} is {:?}: {} {}", row.id, row.status, row.computed, row.note)),
            }
        }
        for family in families {
            let count = rows.iter().filter(|r| r.id.starts_with(family)).count();
            ensure(count > 0, || format!("no rows for {family}"))?;
            summary.push(format!("{count} {family}"));
        }
        let skipped = rows.iter().filter(|r| r.status == Status::Skip).count();
        summary.push(format!("{skipped} cited skipped"));
    }
    Ok(summary.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("coset construction over Z_11", coset_construction),
        ("change point and binary codes", change_point_codes),
        ("printed codes", printed_codes),
        ("printed sequence", printed_sequence),
        ("DSS certification", dss_certification),
        ("identity suite", identity_suite),
        ("predicate cross-validation", predicate_sweep),
        ("CCC contrapositive", ccc_contrapositive),
        ("discrepancy reporting", discrepancies),
        ("table reproduction", table_rows),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
