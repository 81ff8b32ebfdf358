//! Frequency-hopping sequences `T_i = f(iα)` and the Lempel-Greenberger bound.

use std::hash::Hash;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::zd::{self, FunctionTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fhs {
    pub values: Vec<usize>,
    pub m: usize,
    /// `profile[t - 1] = H(t)` for `t = 1..n-1`.
    pub profile: Vec<usize>,
    pub h_max: usize,
    pub epsilon: usize,
    /// `C = (n - ε)(n + ε - m) / (m(n - 1))`.
    pub c: Rational,
    /// `⌈C⌉`.
    pub lg_bound: i128,
}

impl Fhs {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `H(t)`, with `H(0) = n`.
    pub fn h(&self, t: usize) -> usize {
        if t.is_multiple_of(self.n()) {
            self.n()
        } else {
            self.profile[t % self.n() - 1]
        }
    }
}

/// Smallest-index additive generator; index 1 for `Z_n`.
pub fn default_generator(f: &FunctionTable) -> Result<Element> {
    let ring = f.ring();
    if !ring.additive_group_is_cyclic() {
        return Err(Error::NotCyclic(ring.radices().to_vec()));
    }
    ring.elements()
        .find(|&x| ring.additive_order(x) == ring.order())
        .ok_or_else(|| Error::Internal("cyclic group without a generator".into()))
}

pub fn build_fhs(f: &FunctionTable, alpha: Option<Element>) -> Result<Fhs> {
    let ring = f.ring();
    if !ring.additive_group_is_cyclic() {
        return Err(Error::NotCyclic(ring.radices().to_vec()));
    }
    let alpha = match alpha {
        Some(a) => {
            ring.element(a.index())?;
            if ring.additive_order(a) != ring.order() {
                return Err(Error::NotAGenerator(a.index()));
            }
            a
        }
        None => default_generator(f)?,
    };
    let mut values = Vec::with_capacity(f.n());
    let mut x = ring.zero();
    for _ in 0..f.n() {
        values.push(f.value(x));
        x = ring.add(x, alpha);
    }
    analyze(values, f.m())
}

/// Analyzes an external sequence after relabeling symbols by first occurrence.
pub fn analyze_sequence<T: Eq + Hash + Clone>(symbols: &[T]) -> Result<Fhs> {
    let values = zd::compact_labels(symbols);
    let m = values.iter().max().map_or(0, |&v| v + 1);
    analyze(values, m)
}

fn analyze(values: Vec<usize>, m: usize) -> Result<Fhs> {
    let (profile, h_max) = hamming_autocorrelation(&values)?;
    let n = values.len();
    let (c, lg_bound) = lg_bound(n, m)?;
    Ok(Fhs {
        values,
        m,
        profile,
        h_max,
        epsilon: n % m,
        c,
        lg_bound,
    })
}

/// `H(t) = Σ_i [x_i = x_{i+t}]` for `t = 1..n-1` and its maximum.
pub fn hamming_autocorrelation<T: Eq + Sync>(x: &[T]) -> Result<(Vec<usize>, usize)> {
    let n = x.len();
    if n < 2 {
        return Err(Error::InvalidParameter("autocorrelation needs a sequence of length >= 2".into()));
    }
    let profile: Vec<usize> = (1..n)
        .into_par_iter()
        .map(|t| (0..n).filter(|&i| x[i] == x[(i + t) % n]).count())
        .collect();
    let h_max = *profile.iter().max().expect("n >= 2");
    Ok((profile, h_max))
}

/// `(C, ⌈C⌉)` with `ε = n mod m`.
pub fn lg_bound(n: usize, m: usize) -> Result<(Rational, i128)> {
    if n < 2 || m == 0 {
        return Err(Error::InvalidParameter(format!("bound needs n > 1 and m >= 1, got n = {n}, m = {m}")));
    }
    let c = zd::balance_constant(n, m);
    Ok((c, exact::ceil(&c)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FhsCase {
    /// Decided by `λ - C < 1`.
    General,
    /// Almost balanced, where `C = λ̄` and `λ - λ̄ < 1` decides.
    AlmostBalanced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FhsCertificate {
    pub lambda: usize,
    #[serde(serialize_with = "crate::io::serialize_ratio")]
    pub c: Rational,
    pub bound: i128,
    #[serde(serialize_with = "crate::io::serialize_ratio")]
    pub gap: Rational,
    pub optimal: bool,
    pub via: FhsCase,
}

/// Optimality of an FHS with maximum autocorrelation `λ` against `⌈C⌉`.
pub fn fhs_certify(lambda: usize, lambda_bar: Rational, n: usize, m: usize, almost_balanced: bool) -> Result<FhsCertificate> {
    let (c, bound) = lg_bound(n, m)?;
    let gap = exact::integer(lambda as i128) - c;
    if gap < exact::integer(0) {
        return Err(Error::InvalidParameter(format!(
            "λ = {lambda} lies below C = {}",
            exact::format_ratio(&c)
        )));
    }
    let optimal = gap < exact::integer(1);
    if optimal != (lambda as i128 == bound) {
        return Err(Error::Internal(format!("λ - C < 1 disagrees with λ = ⌈C⌉ for λ = {lambda}, C = {c}")));
    }
    let via = if almost_balanced {
        if lambda_bar != c {
            return Err(Error::Internal(format!(
                "almost balanced but λ̄ = {} differs from C = {}",
                exact::format_ratio(&lambda_bar),
                exact::format_ratio(&c)
            )));
        }
        FhsCase::AlmostBalanced
    } else {
        FhsCase::General
    };
    Ok(FhsCertificate {
        lambda,
        c,
        bound,
        gap,
        optimal,
        via,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{RingDescriptor, DEFAULT_MAX_ORDER};
    use crate::construct::{change_point_zero, family_product_fields, family_zn};

    #[test]
    fn change_point_sequence_over_z11() {
        let cp = change_point_zero(&family_zn(11, 5, DEFAULT_MAX_ORDER).unwrap()).unwrap();
        let s = build_fhs(&cp.table, None).unwrap();
        assert_eq!((s.n(), s.m, s.h_max), (11, 2, 5));
        assert!(s.profile.iter().all(|&h| h == 5));
        assert_eq!(s.h(0), 11);
        assert_eq!((s.c, s.lg_bound), (exact::integer(5), 5));
    }

    #[test]
    fn non_cyclic_domain_is_rejected() {
        let base = family_product_fields(&[(3, 2), (5, 1)], 4, DEFAULT_MAX_ORDER).unwrap();
        assert!(matches!(build_fhs(&base.table, None), Err(Error::NotCyclic(_))));
    }

    #[test]
    fn non_generator_is_rejected() {
        let ring = std::sync::Arc::new(crate::algebra::Ring::new(&RingDescriptor::zn(9)).unwrap());
        let f = FunctionTable::new(ring, vec![0, 1, 1, 0, 1, 1, 0, 1, 2]).unwrap();
        assert!(matches!(build_fhs(&f, Some(Element::new(3))), Err(Error::NotAGenerator(3))));
        assert!(build_fhs(&f, Some(Element::new(2))).is_ok());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(lg_bound(52, 17).unwrap(), (exact::rational(1836, 867), 3));
        assert_eq!(lg_bound(11, 2).unwrap(), (exact::integer(5), 5));
        assert_eq!(lg_bound(9, 9).unwrap(), (exact::integer(0), 0));
    }

    #[test]
    fn certificate_predicates() {
        let ok = fhs_certify(5, exact::integer(5), 11, 2, true).unwrap();
        assert!(ok.optimal);
        assert_eq!(ok.via, FhsCase::AlmostBalanced);
        assert!(fhs_certify(3, exact::rational(7, 3), 52, 17, false).unwrap().optimal);
        let c = lg_bound(6, 2).unwrap().0;
        assert_eq!(c, exact::rational(12, 5));
        assert!(!fhs_certify(4, c, 6, 2, true).unwrap().optimal);
        assert!(fhs_certify(1, c, 6, 2, true).is_err());
    }

    #[test]
    fn sequence_relabeling() {
        let s = analyze_sequence(&["x", "y", "x", "z"]).unwrap();
        assert_eq!(s.values, vec![0, 1, 0, 2]);
        assert_eq!(s.m, 3);
        assert!(hamming_autocorrelation::<u8>(&[1]).is_err());
    }
}
