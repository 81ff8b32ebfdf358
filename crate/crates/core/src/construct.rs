//! Coset ZDB functions and the change-point technique.
//!
//! For a multiplicative subgroup `G` of a ring `R` of order `n` with `(G - 1) \ {0} ⊂ R^×`,
//! the orbits `rG` partition `R` into `{0}` and `(n - 1)/k` classes of size `k = |G|`;
//! labelling each orbit gives an `(n, (n - 1)/k + 1, k - 1)` ZDB function of Type-A.
//!
//! Changing the value at the singleton point `a0` to the value at some `a` outside it merges
//! `a0` into the block `I(a)` of `a`. The resulting spectrum is determined by
//! `D = (I(a) - a0) ∩ (a0 - I(a))`, as enumerated in [`ChangePointCase`].

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{
    self, check_unit_difference, contains_minus_one, find_order_e_subgroup, Element, Ring,
    RingDescriptor, Subgroup,
};
use crate::error::{Error, Result};
use crate::zd::{self, FunctionTable};

/// Orbits `rG`, indexed by label; labels ascend with each orbit's smallest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetLabeling {
    pub cosets: Vec<Vec<Element>>,
}

impl CosetLabeling {
    pub fn label_of(&self, x: Element) -> Option<usize> {
        self.cosets.iter().position(|c| c.contains(&x))
    }
}

#[derive(Clone, Debug)]
pub struct CosetZdb {
    pub table: FunctionTable,
    pub labeling: CosetLabeling,
    pub subgroup: Subgroup,
}

impl CosetZdb {
    pub fn k(&self) -> usize {
        self.subgroup.order()
    }
}

/// Coset ZDB function `f_G(x) = label(xG)`.
pub fn coset_zdb(ring: Arc<Ring>, subgroup: &Subgroup) -> Result<CosetZdb> {
    if let Some(g) = algebra::first_unit_difference_failure(&ring, subgroup) {
        return Err(Error::UnitDifference(g.index()));
    }
    let n = ring.order();
    let k = subgroup.order();
    if !(n - 1).is_multiple_of(k) {
        return Err(Error::Internal(format!("|G| = {k} does not divide n - 1 = {}", n - 1)));
    }
    let mut values = vec![usize::MAX; n];
    let mut cosets = Vec::new();
    for x in ring.elements() {
        if values[x.index()] != usize::MAX {
            continue;
        }
        let label = cosets.len();
        let mut orbit: Vec<Element> = subgroup.elements().iter().map(|&g| ring.mul(x, g)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for y in &orbit {
            values[y.index()] = label;
        }
        cosets.push(orbit);
    }
    let table = FunctionTable::new(ring, values)?;
    debug_assert_eq!(table.m(), (n - 1) / k + 1);
    Ok(CosetZdb {
        table,
        labeling: CosetLabeling { cosets },
        subgroup: subgroup.clone(),
    })
}

/// Which spectrum the change point produces, with `q = (n - 1)/k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChangePointCase {
    /// `q = 1`: the result is constant, `S = {n}`.
    Constant,
    /// `q = 2`, `D = ∅`: `S = {k}`.
    Balanced,
    /// `q > 2`, `D = ∅`: `S = {k - 1, k}`.
    Disjoint,
    /// `q >= 2`, `D = I(a) - a0`: `S = {k - 1, k + 1}`.
    Symmetric,
    /// `q >= 2`, `∅ ⊊ D ⊊ I(a) - a0`: `S = {k - 1, k, k + 1}`.
    Partial,
}

impl ChangePointCase {
    pub fn predicted_spectrum(self, n: usize, k: usize) -> BTreeSet<usize> {
        match self {
            ChangePointCase::Constant => BTreeSet::from([n]),
            ChangePointCase::Balanced => BTreeSet::from([k]),
            ChangePointCase::Disjoint => BTreeSet::from([k - 1, k]),
            ChangePointCase::Symmetric => BTreeSet::from([k - 1, k + 1]),
            ChangePointCase::Partial => BTreeSet::from([k - 1, k, k + 1]),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChangePointResult {
    pub table: FunctionTable,
    pub a0: Element,
    pub a: Element,
    /// `I(a)`, the block of `a` in the base function.
    pub block: Vec<Element>,
    /// `D = (I(a) - a0) ∩ (a0 - I(a))`.
    pub overlap: Vec<Element>,
    /// `E = (I(a) - a0) ∪ (a0 - I(a))`.
    pub union: Vec<Element>,
    pub k: usize,
    pub case: ChangePointCase,
    pub predicted: BTreeSet<usize>,
    /// Brute-force spectrum of `table`, equal to `predicted`.
    pub spectrum: zd::ZdSpectrum,
}

/// `f_G^0`: the coset function with `f(0)` replaced by `f(1)`.
///
/// The case is read off `-1 ∈ G`.
pub fn change_point_zero(base: &CosetZdb) -> Result<ChangePointResult> {
    let ring = base.table.ring().clone();
    let n = ring.order();
    let k = base.k();
    if n < 2 {
        return Err(Error::InvalidParameter("change point needs n >= 2".into()));
    }
    let q = (n - 1) / k;
    let minus_one = contains_minus_one(&ring, &base.subgroup)?;
    let case = match (q, minus_one) {
        (1, _) => ChangePointCase::Constant,
        (_, true) => ChangePointCase::Symmetric,
        (2, false) => ChangePointCase::Balanced,
        (_, false) => ChangePointCase::Disjoint,
    };
    finish(&base.table, ring.zero(), ring.one(), k, case)
}

/// `g_a`: a Type-A ZDB function with the singleton point `a0` moved into the block of `a`.
///
/// The base must be ZDB with profile `{1, k^{m-1}}` and `f^{-1}(f(a0)) = {a0}`; its constant
/// spectrum is necessarily `k - 1`.
pub fn change_point_general(f: &FunctionTable, a0: Element, a: Element) -> Result<ChangePointResult> {
    let ring = f.ring().clone();
    ring.element(a0.index())?;
    ring.element(a.index())?;
    let stats = zd::preimage_stats(f);
    let spectrum = zd::zd_spectrum(f)?;
    let class = zd::classify(&spectrum, &stats);
    let k = class
        .type_a
        .ok_or_else(|| Error::NotTypeA(format!("preimage profile {}", stats.profile_string())))?;
    if stats.sizes[f.value(a0)] != 1 {
        return Err(Error::NotTypeA(format!(
            "a0 = {a0} lies in a block of size {}, not the singleton",
            stats.sizes[f.value(a0)]
        )));
    }
    if !class.zdb {
        return Err(Error::NotBalanced(spectrum.values.iter().copied().collect()));
    }
    if f.value(a) == f.value(a0) {
        return Err(Error::SameBlock {
            a0: a0.index(),
            a: a.index(),
        });
    }
    if spectrum.max + 1 != k {
        return Err(Error::Internal(format!(
            "Type-A ZDB base with blocks of size {k} has constant spectrum {} instead of {}",
            spectrum.max,
            k - 1
        )));
    }

    let n = ring.order();
    let q = (n - 1) / k;
    let (block, overlap, _) = block_differences(f, a0, a);
    let case = if q == 1 {
        ChangePointCase::Constant
    } else if overlap.is_empty() {
        if q == 2 {
            ChangePointCase::Balanced
        } else {
            ChangePointCase::Disjoint
        }
    } else if overlap.len() == block.len() {
        ChangePointCase::Symmetric
    } else {
        ChangePointCase::Partial
    };
    finish(f, a0, a, k, case)
}

/// Smallest-index `a` outside the block of `a0` with `D = ∅`, so that `max S = k`.
pub fn disjoint_partner(f: &FunctionTable, a0: Element) -> Option<Element> {
    f.ring()
        .elements()
        .filter(|&a| f.value(a) != f.value(a0))
        .find(|&a| block_differences(f, a0, a).1.is_empty())
}

/// The unique point of a singleton preimage, when there is exactly one.
pub fn singleton_point(f: &FunctionTable) -> Option<Element> {
    let stats = zd::preimage_stats(f);
    let mut singles = stats.sizes.iter().enumerate().filter(|(_, &r)| r == 1);
    let (label, _) = singles.next()?;
    if singles.next().is_some() {
        return None;
    }
    f.ring().elements().find(|&x| f.value(x) == label)
}

fn block_differences(f: &FunctionTable, a0: Element, a: Element) -> (Vec<Element>, Vec<Element>, Vec<Element>) {
    let ring = f.ring();
    let block: Vec<Element> = ring.elements().filter(|&x| f.value(x) == f.value(a)).collect();
    let forward: BTreeSet<Element> = block.iter().map(|&x| ring.sub(x, a0)).collect();
    let backward: BTreeSet<Element> = block.iter().map(|&x| ring.sub(a0, x)).collect();
    let overlap = forward.intersection(&backward).copied().collect();
    let union = forward.union(&backward).copied().collect();
    (block, overlap, union)
}

fn finish(f: &FunctionTable, a0: Element, a: Element, k: usize, case: ChangePointCase) -> Result<ChangePointResult> {
    let (block, overlap, union) = block_differences(f, a0, a);
    let table = reassign_point(f, a0, a)?;
    let n = f.n();
    let predicted = case.predicted_spectrum(n, k);
    let spectrum = zd::zd_spectrum(&table)?;
    if spectrum.values != predicted {
        return Err(Error::Internal(format!(
            "change point predicted spectrum {predicted:?}, brute force found {:?}",
            spectrum.values
        )));
    }
    Ok(ChangePointResult {
        table,
        a0,
        a,
        block,
        overlap,
        union,
        k,
        case,
        predicted,
        spectrum,
    })
}

/// Sets `g(a0) = f(a)`, drops the vacated label and shifts higher labels down.
fn reassign_point(f: &FunctionTable, a0: Element, a: Element) -> Result<FunctionTable> {
    let vacated = f.value(a0);
    let mut values = f.values().to_vec();
    values[a0.index()] = f.value(a);
    if values.contains(&vacated) {
        return FunctionTable::with_image_size(f.ring().clone(), f.m(), values);
    }
    for v in &mut values {
        if *v > vacated {
            *v -= 1;
        }
    }
    FunctionTable::with_image_size(f.ring().clone(), f.m() - 1, values)
}

/// Coset ZDB on `Z_n` with a subgroup of order `e`.
///
/// `n` must be odd and `e` must divide `p - 1` for every prime `p | n`. Candidate subgroups
/// are tried in ascending generator order until one satisfies the unit-difference condition.
pub fn family_zn(n: usize, e: usize, max_order: usize) -> Result<CosetZdb> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("n = {n} must be an odd integer >= 3")));
    }
    if e == 0 {
        return Err(Error::InvalidParameter("e must be positive".into()));
    }
    let primes = algebra::prime_factors(n);
    if let Some(p) = primes.iter().find(|&&p| (p - 1) % e != 0) {
        let g = primes.iter().fold(0, |acc, &p| algebra::gcd(acc, p - 1));
        return Err(Error::Divisibility(format!(
            "e = {e} does not divide {} (gcd of p - 1 over the primes of {n} is {g})",
            p - 1
        )));
    }
    let ring = Arc::new(Ring::with_max_order(&RingDescriptor::zn(n), max_order)?);
    let subgroup = algebra::order_e_subgroups(&ring, e)
        .find(|g| check_unit_difference(&ring, g))
        .ok_or_else(|| {
            Error::Internal(format!("no order-{e} subgroup of Z_{n}^x satisfies the unit-difference condition"))
        })?;
    coset_zdb(ring, &subgroup)
}

/// Coset ZDB on `GF(p_1^{r_1}) x ... x GF(p_k^{r_k})` with componentwise order-`e` generators.
pub fn family_product_fields(factors: &[(u64, u32)], e: usize, max_order: usize) -> Result<CosetZdb> {
    if factors.is_empty() {
        return Err(Error::InvalidParameter("at least one field factor is required".into()));
    }
    if e == 0 {
        return Err(Error::InvalidParameter("e must be positive".into()));
    }
    let primes: HashSet<u64> = factors.iter().map(|&(p, _)| p).collect();
    if primes.len() != factors.len() {
        return Err(Error::InvalidParameter("field factors must have distinct characteristics".into()));
    }
    let descriptor = RingDescriptor::product(factors.iter().map(|&(p, r)| RingDescriptor::gf(p, r)).collect());
    let ring = Arc::new(Ring::with_max_order(&descriptor, max_order)?);
    for &(p, r) in factors {
        let q = (p as u128).pow(r) - 1;
        if q % e as u128 != 0 {
            return Err(Error::Divisibility(format!("e = {e} does not divide {p}^{r} - 1 = {q}")));
        }
    }
    let subgroup = find_order_e_subgroup(&ring, e)?;
    coset_zdb(ring, &subgroup)
}
