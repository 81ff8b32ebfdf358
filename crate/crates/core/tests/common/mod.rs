//! Instance enumeration shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use zdkit::algebra::{factorize, gcd, prime_factors};
use zdkit::construct::{self, family_product_fields, family_zn};
use zdkit::io::{self, TableBundle};
use zdkit::reproduce::{self, BUNDLE_FILE};
use zdkit::{Element, FunctionTable};

pub const MAX_ORDER: usize = 1 << 16;

pub fn fixtures() -> PathBuf {
    reproduce::default_fixtures()
}

pub fn bundle() -> TableBundle {
    io::read_json(&fixtures().join(BUNDLE_FILE)).expect("imported tables")
}

/// A constructed table and what the construction predicts for it.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub table: FunctionTable,
    pub predicted: BTreeSet<usize>,
    /// Block size of a Type-A ZDB base.
    pub k: Option<usize>,
}

/// `(n, e)` with odd `n` in `lo..=hi` and `e >= 2` dividing `p - 1` for every prime `p | n`.
pub fn zn_pairs(lo: usize, hi: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in ((lo.max(3) | 1)..=hi).step_by(2) {
        let g = prime_factors(n).iter().fold(0, |acc, &p| gcd(acc, p - 1));
        out.extend((2..=g).filter(|e| g % e == 0).map(|e| (n, e)));
    }
    out
}

/// Odd `n` in `lo..=hi` with `e >= 2` dividing every `p^r - 1`, as field factors.
pub fn field_pairs(lo: usize, hi: usize) -> Vec<(Vec<(u64, u32)>, usize)> {
    let mut out = Vec::new();
    for n in ((lo.max(3) | 1)..=hi).step_by(2) {
        let factors: Vec<(u64, u32)> = factorize(n).into_iter().map(|(p, r)| (p as u64, r)).collect();
        let g = factors.iter().fold(0, |acc, &(p, r)| gcd(acc, p.pow(r) as usize - 1));
        out.extend((2..=g).filter(|e| g % e == 0).map(|e| (factors.clone(), e)));
    }
    out
}

fn coset_and_change_point(name: String, base: construct::CosetZdb) -> Vec<Instance> {
    let k = base.k();
    let cp = construct::change_point_zero(&base).expect("change point");
    vec![
        Instance {
            name: format!("{name} coset"),
            predicted: BTreeSet::from([k - 1]),
            table: base.table.clone(),
            k: Some(k),
        },
        Instance {
            name: format!("{name} change point"),
            predicted: cp.predicted.clone(),
            table: cp.table,
            k: None,
        },
    ]
}

pub fn zn_instances(n: usize, e: usize) -> Vec<Instance> {
    let base = family_zn(n, e, MAX_ORDER).unwrap_or_else(|err| panic!("Z_{n}, e = {e}: {err}"));
    coset_and_change_point(format!("Z_{n} e={e}"), base)
}

pub fn field_instances(factors: &[(u64, u32)], e: usize) -> Vec<Instance> {
    let base = family_product_fields(factors, e, MAX_ORDER).unwrap_or_else(|err| panic!("{factors:?}, e = {e}: {err}"));
    coset_and_change_point(format!("fields {factors:?} e={e}"), base)
}

/// Imported Type-A bases and their change points at the zero singleton.
pub fn imported_instances(max_n: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for entry in bundle().tables {
        if entry.table.values.len() > max_n {
            continue;
        }
        let f = io::import_table(&entry.table, MAX_ORDER).unwrap();
        let a = construct::disjoint_partner(&f, Element::ZERO).expect("partner");
        let cp = construct::change_point_general(&f, Element::ZERO, a).expect("change point");
        let name = format!("{} e={}", f.ring().descriptor(), entry.e);
        out.push(Instance {
            name: format!("{name} imported"),
            predicted: BTreeSet::from([entry.e - 2]),
            k: Some(entry.e - 1),
            table: f,
        });
        out.push(Instance {
            name: format!("{name} imported change point"),
            predicted: cp.predicted.clone(),
            table: cp.table,
            k: None,
        });
    }
    out
}

/// Every family instance with `lo <= n <= hi`.
pub fn all_instances(lo: usize, hi: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for (n, e) in zn_pairs(lo, hi) {
        out.extend(zn_instances(n, e));
    }
    for (factors, e) in field_pairs(lo, hi) {
        out.extend(field_instances(&factors, e));
    }
    out
}

/// Largest `n` whose code is built and checked word by word.
pub const CODE_LIMIT: usize = 160;

/// Brute-force checks of one instance; returns the failed checks.
pub fn check_instance(inst: &Instance) -> Vec<String> {
    use zdkit::{codes, dss, fhs, zd};
    let f = &inst.table;
    let ring = f.ring();
    let n = f.n();
    let mut failed = Vec::new();
    let mut fail = |what: String| failed.push(format!("{}: {what}", inst.name));

    let s = zd::zd_spectrum(f).unwrap();
    let stats = zd::preimage_stats(f);
    let report = zd::identity_report(&s, &stats);
    if !report.all_hold() {
        fail(format!("identities {:?}", report.failures()));
    }
    if ring.elements().any(|a| s.lambda(a) != s.lambda(ring.neg(a))) {
        fail("λ_α ≠ λ_{-α}".into());
    }
    if s.values != inst.predicted {
        fail(format!("predicted {:?}, brute force {:?}", inst.predicted, s.values));
    }
    // a constant table repeats one word
    if n <= CODE_LIMIT && s.max < n {
        let code = codes::build_code(f).unwrap();
        if code.d != n - s.max || code.size() != n {
            fail(format!("code d = {}, n - λ = {}", code.d, n - s.max));
        }
    }
    let d = dss::build_dss(f);
    if ring.elements().skip(1).any(|g| d.coverage[g.index()] != n - s.lambda(g)) {
        fail("coverage(g) ≠ n - λ_g".into());
    }
    if ring.additive_group_is_cyclic() {
        let generators: Vec<Element> = if n <= 100 {
            ring.elements().filter(|&a| ring.additive_order(a) == n).collect()
        } else {
            let g = fhs::default_generator(f).unwrap();
            vec![g, ring.neg(g)]
        };
        for alpha in generators {
            let seq = fhs::build_fhs(f, Some(alpha)).unwrap();
            let mut x = alpha;
            for t in 1..n {
                if seq.h(t) != s.lambda(x) {
                    fail(format!("H({t}) ≠ λ_(tα) for α = {}", alpha.index()));
                    break;
                }
                x = ring.add(x, alpha);
            }
            if seq.h_max != s.max {
                fail("H_max ≠ λ_max".into());
            }
        }
    }
    failed
}
