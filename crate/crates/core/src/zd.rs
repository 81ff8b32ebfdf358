//! Function tables and their zero-difference spectra.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::Hash;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Element, Ring};
use crate::error::{Error, Result};
use crate::exact::{self, Rational};

/// A function `A -> Z_m` stored as its values over the canonical enumeration of `A`.
///
/// Every label in `0..m` is attained.
#[derive(Clone, Debug)]
pub struct FunctionTable {
    ring: Arc<Ring>,
    m: usize,
    values: Vec<usize>,
}

impl PartialEq for FunctionTable {
    fn eq(&self, other: &Self) -> bool {
        self.ring.descriptor() == other.ring.descriptor() && self.m == other.m && self.values == other.values
    }
}

impl Eq for FunctionTable {}

impl FunctionTable {
    /// Table with image size `max(values) + 1`.
    pub fn new(ring: Arc<Ring>, values: Vec<usize>) -> Result<Self> {
        let m = values.iter().max().map_or(0, |&v| v + 1);
        Self::with_image_size(ring, m, values)
    }

    /// Table with an explicit image size; every label in `0..m` must occur.
    pub fn with_image_size(ring: Arc<Ring>, m: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != ring.order() {
            return Err(Error::LengthMismatch {
                expected: ring.order(),
                found: values.len(),
            });
        }
        let mut seen = vec![false; m];
        for &v in &values {
            if v >= m {
                return Err(Error::SymbolOutOfRange { symbol: v, q: m });
            }
            seen[v] = true;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::Malformed(format!("label {missing} of 0..{m} is never attained")));
        }
        Ok(FunctionTable { ring, m, values })
    }

    /// Compacts arbitrary labels to `0..m` in first-occurrence order.
    pub fn from_labels<T: Eq + Hash + Clone>(ring: Arc<Ring>, labels: &[T]) -> Result<Self> {
        Self::new(ring, compact_labels(labels))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value(&self, x: Element) -> usize {
        self.values[x.index()]
    }

    /// Swaps labels `0` and `label`, so that the class of `label` plays the zero symbol.
    pub fn with_zero_label(&self, label: usize) -> Result<Self> {
        if label >= self.m {
            return Err(Error::SymbolOutOfRange {
                symbol: label,
                q: self.m,
            });
        }
        let values = self
            .values
            .iter()
            .map(|&v| match v {
                0 => label,
                v if v == label => 0,
                v => v,
            })
            .collect();
        Ok(FunctionTable {
            ring: self.ring.clone(),
            m: self.m,
            values,
        })
    }

    /// Same partition, labels renumbered by first occurrence.
    pub fn normalized(&self) -> Self {
        FunctionTable {
            ring: self.ring.clone(),
            m: self.m,
            values: compact_labels(&self.values),
        }
    }

    /// Preimage classes in label order.
    pub fn blocks(&self) -> Vec<Vec<Element>> {
        let mut blocks = vec![Vec::new(); self.m];
        for (x, &v) in self.values.iter().enumerate() {
            blocks[v].push(Element::new(x));
        }
        blocks
    }
}

pub(crate) fn compact_labels<T: Eq + Hash + Clone>(labels: &[T]) -> Vec<usize> {
    let mut map: HashMap<T, usize> = HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(l.clone()).or_insert(next)
        })
        .collect()
}

/// Preimage sizes `r_b` and their multiset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreimageStats {
    /// `sizes[b] = |f^{-1}(b)|`.
    pub sizes: Vec<usize>,
    /// Size -> multiplicity.
    pub profile: BTreeMap<usize, usize>,
    /// Size of the preimage of label 0.
    pub b0: usize,
}

impl PreimageStats {
    pub fn sum_of_squares(&self) -> u128 {
        self.sizes.iter().map(|&r| (r * r) as u128).sum()
    }

    /// The profile in `{size^mult}` notation, largest size first.
    pub fn profile_string(&self) -> String {
        let parts: Vec<String> = self
            .profile
            .iter()
            .rev()
            .map(|(&size, &mult)| if mult == 1 { size.to_string() } else { format!("{size}^{mult}") })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

pub fn preimage_stats(f: &FunctionTable) -> PreimageStats {
    let mut sizes = vec![0; f.m];
    for &v in &f.values {
        sizes[v] += 1;
    }
    let mut profile = BTreeMap::new();
    for &r in &sizes {
        *profile.entry(r).or_insert(0) += 1;
    }
    PreimageStats {
        b0: sizes.first().copied().unwrap_or(0),
        sizes,
        profile,
    }
}

/// Zero-difference counts over all nonzero shifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZdSpectrum {
    /// `counts[α] = λ_α`, indexed by the canonical index of `α`; `counts[0] = n`.
    pub counts: Vec<usize>,
    pub values: BTreeSet<usize>,
    pub max: usize,
    pub min: usize,
    pub mean: Rational,
}

impl ZdSpectrum {
    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn lambda(&self, alpha: Element) -> usize {
        self.counts[alpha.index()]
    }

    /// `λ_α` for `α = 1..n-1`.
    pub fn nonzero(&self) -> &[usize] {
        &self.counts[1..]
    }

    pub fn is_balanced(&self) -> bool {
        self.values.len() == 1
    }

    pub fn total(&self) -> u128 {
        self.nonzero().iter().map(|&l| l as u128).sum()
    }
}

/// Exhaustive `O(n^2)` scan of `λ_α = |{x : f(x + α) = f(x)}|`.
pub fn zd_spectrum(f: &FunctionTable) -> Result<ZdSpectrum> {
    let n = f.n();
    if n < 2 {
        return Err(Error::InvalidParameter("a spectrum needs a domain of order >= 2".into()));
    }
    let ring = &f.ring;
    let values = &f.values;
    let counts: Vec<usize> = (0..n)
        .into_par_iter()
        .map(|a| {
            let alpha = Element::new(a);
            ring.elements()
                .filter(|&x| values[ring.add(x, alpha).index()] == values[x.index()])
                .count()
        })
        .collect();
    Ok(spectrum_from_counts(counts))
}

pub(crate) fn spectrum_from_counts(counts: Vec<usize>) -> ZdSpectrum {
    let nonzero = &counts[1..];
    let values: BTreeSet<usize> = nonzero.iter().copied().collect();
    let total: i128 = nonzero.iter().map(|&l| l as i128).sum();
    ZdSpectrum {
        max: *values.last().expect("n >= 2"),
        min: *values.first().expect("n >= 2"),
        mean: exact::rational(total, nonzero.len() as i128),
        values,
        counts,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub zdb: bool,
    /// `e` when the profile is `{1, e^{m-1}}`.
    pub type_a: Option<usize>,
    /// `e` when the profile is `{e+1, e^{m-1}}`.
    pub type_b: Option<usize>,
    pub almost_balanced: bool,
}

pub fn classify(spectrum: &ZdSpectrum, stats: &PreimageStats) -> Classification {
    Classification {
        zdb: spectrum.is_balanced(),
        type_a: type_a(stats),
        type_b: type_b(stats),
        almost_balanced: almost_balanced(stats),
    }
}

fn type_a(stats: &PreimageStats) -> Option<usize> {
    let m = stats.sizes.len();
    let mut rest = stats.profile.clone();
    take_one(&mut rest, 1)?;
    match rest.len() {
        0 => None,
        1 => {
            let (&e, &mult) = rest.iter().next()?;
            (mult == m - 1).then_some(e)
        }
        _ => None,
    }
}

fn type_b(stats: &PreimageStats) -> Option<usize> {
    let m = stats.sizes.len();
    let largest = *stats.profile.keys().next_back()?;
    if largest < 2 {
        return None;
    }
    let mut rest = stats.profile.clone();
    take_one(&mut rest, largest)?;
    match rest.len() {
        0 => (m == 1).then_some(largest - 1),
        1 => {
            let (&e, &mult) = rest.iter().next()?;
            (e + 1 == largest && mult == m - 1).then_some(e)
        }
        _ => None,
    }
}

fn take_one(profile: &mut BTreeMap<usize, usize>, size: usize) -> Option<()> {
    let mult = profile.get_mut(&size)?;
    *mult -= 1;
    if *mult == 0 {
        profile.remove(&size);
    }
    Some(())
}

/// Sizes `k` (m - ε times) and `k + 1` (ε times) where `n = km + ε`.
pub fn almost_balanced(stats: &PreimageStats) -> bool {
    let m = stats.sizes.len();
    let n: usize = stats.sizes.iter().sum();
    let (k, eps) = (n / m, n % m);
    let low = stats.sizes.iter().filter(|&&r| r == k).count();
    let high = stats.sizes.iter().filter(|&&r| r == k + 1).count();
    low == m - eps && high == eps
}

/// `C = (n - ε)(n + ε - m) / (m(n - 1))` with `ε = n mod m`.
pub fn balance_constant(n: usize, m: usize) -> Rational {
    let (n, m) = (n as i128, m as i128);
    let eps = n % m;
    exact::rational((n - eps) * (n + eps - m), m * (n - 1))
}

/// Exact evaluation of the counting identities and bounds satisfied by every table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub n: usize,
    pub m: usize,
    pub epsilon: usize,
    /// `(n - ε)(n + ε - m) / (m(n - 1))`.
    pub balance_constant: Rational,
    /// `Σ r_b (r_b - 1)`.
    pub ordered_pairs: u128,
    /// `Σ_α λ_α`.
    pub lambda_total: u128,
    pub pair_count_holds: bool,
    /// `Σ r_b^2`.
    pub square_sum: u128,
    /// `Σ r_b^2 = (n - 1)·λ̄ + n`.
    pub square_sum_holds: bool,
    /// `⌈C + λ - λ̄⌉`.
    pub max_lower_bound: i128,
    pub max_bound_holds: bool,
    pub max_bound_tight: bool,
    /// `λ̄ >= C`.
    pub mean_bound_holds: bool,
    pub mean_bound_tight: bool,
    pub almost_balanced: bool,
    /// Discriminant of the preimage-size range built from `λ` and `μ`.
    pub extremes_discriminant: i128,
    pub extremes_range_holds: bool,
    /// Discriminant of the preimage-size range built from `λ̄`.
    pub mean_discriminant: Rational,
    pub mean_range_holds: bool,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.pair_count_holds
            && self.square_sum_holds
            && self.max_bound_holds
            && self.mean_bound_holds
            && self.mean_bound_tight == self.almost_balanced
            && self.max_bound_tight == self.almost_balanced
            && self.extremes_range_holds
            && self.mean_range_holds
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let checks = [
            (self.pair_count_holds, "pair-count identity"),
            (self.square_sum_holds, "square-sum identity"),
            (self.max_bound_holds, "lower bound on the maximum"),
            (self.mean_bound_holds, "lower bound on the mean"),
            (self.mean_bound_tight == self.almost_balanced, "mean-bound equality vs almost balanced"),
            (self.max_bound_tight == self.almost_balanced, "max-bound equality vs almost balanced"),
            (self.extremes_range_holds, "preimage range (extremes)"),
            (self.mean_range_holds, "preimage range (mean)"),
        ];
        checks.iter().filter(|(ok, _)| !ok).map(|&(_, name)| name).collect()
    }
}

/// Evaluates every identity without failing.
pub fn identity_report(spectrum: &ZdSpectrum, stats: &PreimageStats) -> IdentityReport {
    let n = spectrum.n();
    let m = stats.sizes.len();
    let (ni, mi) = (n as i128, m as i128);
    let lambda = spectrum.max as i128;
    let mu = spectrum.min as i128;
    let mean = spectrum.mean;
    let c = balance_constant(n, m);

    let ordered_pairs: u128 = stats.sizes.iter().map(|&r| (r * (r.saturating_sub(1))) as u128).sum();
    let lambda_total = spectrum.total();
    let square_sum = stats.sum_of_squares();

    let max_shifted = c + exact::integer(lambda) - mean;
    let max_lower_bound = exact::ceil(&max_shifted);
    let ab = almost_balanced(stats);

    let extremes_discriminant =
        (ni + lambda * ni - lambda) * mi * mi - (ni * ni + ni + mu * ni - mu) * mi + ni * ni;
    let mean_discriminant = (exact::integer(ni) + mean * exact::integer(ni) - mean) * exact::integer(mi * mi)
        - (exact::integer(ni * ni + ni) + mean * exact::integer(ni) - mean) * exact::integer(mi)
        + exact::integer(ni * ni);
    let within = |bound: &Rational| {
        stats
            .sizes
            .iter()
            .all(|&r| exact::square_within(mi * r as i128 - ni, bound))
    };

    IdentityReport {
        n,
        m,
        epsilon: n % m,
        balance_constant: c,
        ordered_pairs,
        lambda_total,
        pair_count_holds: ordered_pairs == lambda_total,
        square_sum,
        square_sum_holds: exact::integer(square_sum as i128)
            == exact::integer(ni - 1) * mean + exact::integer(ni),
        max_lower_bound,
        max_bound_holds: lambda >= max_lower_bound,
        max_bound_tight: exact::integer(lambda) == max_shifted,
        mean_bound_holds: mean >= c,
        mean_bound_tight: mean == c,
        almost_balanced: ab,
        extremes_discriminant,
        extremes_range_holds: within(&exact::integer(extremes_discriminant)),
        mean_discriminant,
        mean_range_holds: within(&mean_discriminant),
    }
}

/// Like [`identity_report`], but any failure is an internal inconsistency.
pub fn check_identities(spectrum: &ZdSpectrum, stats: &PreimageStats) -> Result<IdentityReport> {
    let report = identity_report(spectrum, stats);
    if report.all_hold() {
        Ok(report)
    } else {
        Err(Error::Internal(format!("identity check failed: {}", report.failures().join(", "))))
    }
}
