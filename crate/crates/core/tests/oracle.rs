//! Library results against naive re-implementations, and values frozen from an independent
//! computation.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use zdkit::algebra::DEFAULT_MAX_ORDER;
use zdkit::construct::{change_point_zero, family_zn, ChangePointCase};
use zdkit::exact::{self, rational};
use zdkit::{codes, dss, fhs, zd, FunctionTable, Ring, RingDescriptor};

fn naive_spectrum(values: &[usize]) -> Vec<usize> {
    let n = values.len();
    (1..n)
        .map(|a| (0..n).filter(|&x| values[(x + a) % n] == values[x]).count())
        .collect()
}

/// Cosets of `<g>` in `Z_p` for the smallest `g` of order `e`, by modular exponentiation.
fn naive_cosets(p: usize, e: usize) -> Vec<usize> {
    let order = |g: usize| {
        let (mut x, mut k) = (g, 1);
        while x != 1 {
            x = x * g % p;
            k += 1;
        }
        k
    };
    let g = (2..p).find(|&g| order(g) == e).expect("element of order e");
    let subgroup: Vec<usize> = (0..e).scan(1, |x, _| {
        let y = *x;
        *x = *x * g % p;
        Some(y)
    }).collect();
    let mut label = vec![usize::MAX; p];
    let mut next = 0;
    for x in 0..p {
        if label[x] == usize::MAX {
            for &h in &subgroup {
                label[x * h % p] = next;
            }
            next += 1;
        }
    }
    label
}

fn compact(values: &[usize]) -> Vec<usize> {
    let mut seen = Vec::new();
    values
        .iter()
        .map(|v| seen.iter().position(|s| s == v).unwrap_or_else(|| {
            seen.push(*v);
            seen.len() - 1
        }))
        .collect()
}

#[test]
fn prime_field_cosets_match_naive_construction() {
    for (p, e) in [(7, 2), (7, 3), (11, 5), (13, 3), (13, 4), (13, 6), (31, 5), (31, 6), (97, 8)] {
        let base = family_zn(p, e, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(base.table.normalized().values(), compact(&naive_cosets(p, e)), "Z_{p}, e = {e}");
    }
}

// change point f(0) := f(1) over Z_p, computed independently
#[test]
fn frozen_change_point_spectra() {
    let cases: [(usize, usize, &[usize], &[usize], ChangePointCase); 7] = [
        (13, 3, &[2, 3], &[3, 3, 3, 4], ChangePointCase::Disjoint),
        (13, 4, &[3, 5], &[4, 4, 5], ChangePointCase::Symmetric),
        (13, 6, &[5, 7], &[6, 7], ChangePointCase::Symmetric),
        (13, 12, &[13], &[13], ChangePointCase::Constant),
        (31, 5, &[4, 5], &[5, 5, 5, 5, 5, 6], ChangePointCase::Disjoint),
        (31, 6, &[5, 7], &[6, 6, 6, 6, 7], ChangePointCase::Symmetric),
        (7, 2, &[1, 3], &[2, 2, 3], ChangePointCase::Symmetric),
    ];
    for (p, e, s, sizes, case) in cases {
        let cp = change_point_zero(&family_zn(p, e, DEFAULT_MAX_ORDER).unwrap()).unwrap();
        assert_eq!(cp.spectrum.values, s.iter().copied().collect::<BTreeSet<_>>(), "Z_{p}, e = {e}");
        let mut got = zd::preimage_stats(&cp.table).sizes;
        got.sort_unstable();
        assert_eq!(got, sizes);
        assert_eq!(cp.case, case);
        assert_eq!(cp.table.normalized().values(), compact(&{
            let mut v = naive_cosets(p, e);
            v[0] = v[1];
            v
        }));
    }
    let cp = change_point_zero(&family_zn(13, 3, DEFAULT_MAX_ORDER).unwrap()).unwrap();
    assert_eq!(cp.spectrum.mean, rational(5, 2));
}

#[test]
fn frozen_bounds() {
    assert_eq!(codes::ccc_bound(11, 7, &[1, 5, 5]), Some(exact::integer(11)));
    assert_eq!(codes::ccc_bound(11, 6, &[5, 6]), Some(exact::integer(11)));
    assert_eq!(codes::ccc_bound(13, 10, &[3, 3, 3, 4]), Some(rational(65, 2)));
    assert_eq!(codes::ccc_bound(31, 26, &[5, 5, 5, 5, 5, 6]), Some(rational(403, 3)));
    assert_eq!(codes::ccc_bound(13, 8, &[4, 4, 5]), None);
    assert_eq!(codes::cwc_bound(11, 7, 10, 3), Some(exact::integer(11)));
    assert_eq!(codes::cwc_bound(21, 20, 20, 11), Some(exact::integer(21)));
    assert_eq!(codes::cwc_bound(11, 6, 5, 2), Some(exact::integer(11)));
    assert_eq!(codes::cwc_bound(11, 6, 7, 2), Some(rational(33, 5)));
    assert_eq!(codes::cwc_bound(7, 4, 5, 2), Some(rational(7, 2)));
    assert_eq!(dss::dss_bound(45, 11, 40).unwrap(), 44);
    assert_eq!(dss::dss_bound(45, 11, 41).unwrap(), 45);
    assert_eq!(dss::dss_bound(13, 5, 11).unwrap(), 13);
    assert_eq!(fhs::lg_bound(52, 17).unwrap(), (rational(36, 17), 3));
}

#[test]
fn prime_field_arithmetic_matches_integers() {
    let ring = Ring::gf(13, 1).unwrap();
    for x in ring.elements() {
        for y in ring.elements() {
            assert_eq!(ring.mul(x, y).index(), x.index() * y.index() % 13);
            assert_eq!(ring.add(x, y).index(), (x.index() + y.index()) % 13);
        }
    }
}

#[test]
fn extension_field_axioms() {
    for (p, r) in [(2, 3), (3, 2), (5, 2), (3, 3)] {
        let ring = Ring::gf(p, r).unwrap();
        let q = ring.order();
        let units: Vec<_> = ring.elements().skip(1).collect();
        assert!(units.iter().all(|&x| ring.pow(x, q - 1) == ring.one()), "GF({p}^{r})");
        assert!(units.iter().any(|&x| ring.multiplicative_order(x) == Some(q - 1)), "GF({p}^{r}) is not cyclic");
        for &x in &units {
            assert_eq!(units.iter().filter(|&&y| ring.mul(x, y) == ring.one()).count(), 1);
            for y in ring.elements() {
                for z in ring.elements() {
                    assert_eq!(ring.mul(x, ring.add(y, z)), ring.add(ring.mul(x, y), ring.mul(x, z)));
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn spectrum_matches_naive_count(values in prop::collection::vec(0usize..4, 2..60)) {
        let ring = Arc::new(Ring::new(&RingDescriptor::zn(values.len())).unwrap());
        let f = FunctionTable::from_labels(ring, &values).unwrap();
        let s = zd::zd_spectrum(&f).unwrap();
        prop_assert_eq!(s.nonzero(), &naive_spectrum(&values)[..]);
    }

    #[test]
    fn autocorrelation_matches_naive_count(values in prop::collection::vec(0usize..5, 2..60)) {
        let s = fhs::analyze_sequence(&values).unwrap();
        prop_assert_eq!(s.profile, naive_spectrum(&values));
    }
}
