//! Writes the imported Type-A `(ev, (ev-1)/(e-1) + 1, e-2)` ZDB tables used by reproduction.
//!
//! The tables live on `Z_e x R` (`R = Z_v` or a product of fields), with blocks
//! `{0}`, `{0} x rH` for the `H`-orbits on `R \ {0}` (`|H| = e - 1`), and
//! `{(i, g^i t) : 1 <= i < e}` for every `t` in `R` (`g` of order `e`). Each table is checked
//! exhaustively before it is written.
//!
//! Usage: `cargo run --release --example gen_type_a_tables -- [limit] [out.json]`

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;

use zdkit::algebra::{check_unit_difference, order_e_subgroups, Subgroup};
use zdkit::io::{export_table, BundleEntry, TableBundle};
use zdkit::reproduce::{type_a_instances, TypeAInstance, BUNDLE_FILE};
use zdkit::{zd, Element, FunctionTable, Ring, RingDescriptor};

fn unit_difference_subgroup(ring: &Ring, order: usize) -> Subgroup {
    order_e_subgroups(ring, order)
        .find(|h| check_unit_difference(ring, h))
        .unwrap_or_else(|| panic!("no order-{order} unit-difference subgroup in {}", ring.descriptor()))
}

/// Labels indexed by `(i, r)` with `i` in `Z_e` and `r` a canonical index of `R`.
fn labels(e: usize, r: &Ring) -> Vec<Vec<usize>> {
    let v = r.order();
    let h = unit_difference_subgroup(r, e - 1);
    let g_group = unit_difference_subgroup(r, e);
    let g = *g_group
        .elements()
        .iter()
        .find(|&&x| r.multiplicative_order(x) == Some(e))
        .expect("generator of order e");

    let mut label = vec![vec![usize::MAX; v]; e];
    label[0][0] = 0;
    let mut next = 1;
    for x in r.elements().skip(1) {
        if label[0][x.index()] != usize::MAX {
            continue;
        }
        for &y in h.elements() {
            label[0][r.mul(x, y).index()] = next;
        }
        next += 1;
    }
    for t in r.elements() {
        for i in 1..e {
            let point = r.mul(r.pow(g, i), t);
            assert_eq!(label[i][point.index()], usize::MAX, "transversals overlap");
            label[i][point.index()] = next;
        }
        next += 1;
    }
    label
}

fn build(inst: &TypeAInstance) -> FunctionTable {
    let e = inst.e;
    let group = inst.group();
    let (r, cyclic_v) = if inst.cyclic {
        (Ring::zn(inst.v()).unwrap(), Some(inst.v()))
    } else {
        let fields = inst.factors.iter().map(|&(p, k)| RingDescriptor::gf(p, k)).collect();
        (Ring::new(&RingDescriptor::product(fields)).unwrap(), None)
    };
    let label = labels(e, &r);
    let n = inst.n();
    let values: Vec<usize> = (0..n)
        .map(|x| match cyclic_v {
            Some(v) => label[x % e][x % v],
            None => label[x % e][x / e],
        })
        .collect();
    let ring = Arc::new(Ring::with_max_order(&group, n).unwrap());
    let f = FunctionTable::new(ring, values).unwrap();

    let s = zd::zd_spectrum(&f).unwrap();
    let c = zd::classify(&s, &zd::preimage_stats(&f));
    assert_eq!(f.m(), (n - 1) / (e - 1) + 1, "{group}");
    assert_eq!(s.values, BTreeSet::from([e - 2]), "{group}: spectrum");
    assert_eq!(c.type_a, Some(e - 1), "{group}: profile");
    assert_eq!(f.value(Element::ZERO), 0);
    f
}

fn main() {
    let mut args = std::env::args().skip(1);
    let limit: usize = args.next().map_or(500, |a| a.parse().expect("limit"));
    let out = args
        .next()
        .map_or_else(|| zdkit::reproduce::default_fixtures().join(BUNDLE_FILE), PathBuf::from);
    let tables: Vec<BundleEntry> = type_a_instances(limit)
        .iter()
        .map(|inst| {
            let f = build(inst);
            eprintln!("{} e = {}: ok", inst.group(), inst.e);
            BundleEntry {
                e: inst.e,
                factors: inst.factors.clone(),
                table: export_table(&f),
            }
        })
        .collect();
    eprintln!("{} tables", tables.len());
    let text = serde_json::to_string(&TableBundle { tables }).expect("serialize bundle");
    std::fs::write(&out, text + "\n").expect("write bundle");
}
