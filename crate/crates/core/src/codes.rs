//! Cyclic-shift codes `C_f` and their constant-weight / constant-composition bounds.
//!
//! Row `i` of `C_f` is `(f(a_0 + a_i), ..., f(a_{n-1} + a_i))` over the canonical enumeration.
//! Two rows agree in exactly `λ_{a_j - a_i}` positions, so `d = n - λ_max`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::zd::FunctionTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    pub q: usize,
    pub n: usize,
    pub words: Vec<Vec<usize>>,
    /// Minimum pairwise Hamming distance.
    pub d: usize,
    /// Nonzero symbols per word.
    pub weights: Vec<usize>,
    /// `compositions[i][s]` counts symbol `s` in word `i`.
    pub compositions: Vec<Vec<usize>>,
}

impl Code {
    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn constant_weight(&self) -> Option<usize> {
        let w = *self.weights.first()?;
        self.weights.iter().all(|&x| x == w).then_some(w)
    }

    pub fn constant_composition(&self) -> Option<&[usize]> {
        let c = self.compositions.first()?;
        self.compositions.iter().all(|x| x == c).then_some(c.as_slice())
    }

    /// The composition with symbol counts sorted ascending, as the code's signature.
    pub fn sorted_composition(&self) -> Option<Vec<usize>> {
        let mut c = self.constant_composition()?.to_vec();
        c.sort_unstable();
        Some(c)
    }

    pub fn render(&self) -> Vec<String> {
        self.words.iter().map(|w| format_word(w)).collect()
    }
}

/// `C_f`, with label 0 of `f` as the zero symbol.
pub fn build_code(f: &FunctionTable) -> Result<Code> {
    let ring = f.ring();
    let words: Vec<Vec<usize>> = ring
        .elements()
        .map(|shift| ring.elements().map(|x| f.value(ring.add(x, shift))).collect())
        .collect();
    verify_code(words, f.m())
}

/// Exhaustive metrics of an arbitrary word list over `{0..q-1}`.
pub fn verify_code(words: Vec<Vec<usize>>, q: usize) -> Result<Code> {
    if words.len() < 2 {
        return Err(Error::InvalidParameter("a code needs at least two words".into()));
    }
    let n = words[0].len();
    for w in &words {
        if w.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: w.len(),
            });
        }
        if let Some(&s) = w.iter().find(|&&s| s >= q) {
            return Err(Error::SymbolOutOfRange { symbol: s, q });
        }
    }
    let (d, duplicate) = min_distance(&words);
    if let Some((i, j)) = duplicate {
        return Err(Error::DuplicateWord(i, j));
    }
    let compositions: Vec<Vec<usize>> = words
        .iter()
        .map(|w| {
            let mut c = vec![0; q];
            for &s in w {
                c[s] += 1;
            }
            c
        })
        .collect();
    let weights = compositions.iter().map(|c| n - c[0]).collect();
    Ok(Code {
        q,
        n,
        words,
        d,
        weights,
        compositions,
    })
}

/// Minimum distance and the first colliding pair, if any.
fn min_distance(words: &[Vec<usize>]) -> (usize, Option<(usize, usize)>) {
    let packed: Vec<Vec<u32>> = words
        .iter()
        .map(|w| w.iter().map(|&s| s as u32).collect())
        .collect();
    let per_row: Vec<(usize, Option<usize>)> = (0..packed.len())
        .into_par_iter()
        .map(|i| {
            let mut best = usize::MAX;
            let mut dup = None;
            for j in i + 1..packed.len() {
                let dist = packed[i].iter().zip(&packed[j]).filter(|(a, b)| a != b).count();
                if dist == 0 && dup.is_none() {
                    dup = Some(j);
                }
                best = best.min(dist);
            }
            (best, dup)
        })
        .collect();
    let d = per_row.iter().map(|&(d, _)| d).min().unwrap_or(0);
    let dup = per_row
        .iter()
        .enumerate()
        .find_map(|(i, &(_, j))| j.map(|j| (i, j)));
    (d, dup)
}

/// Symbols `0-9` then `A-Z`.
pub fn format_word(word: &[usize]) -> String {
    word.iter()
        .map(|&s| char::from_digit(s as u32, 36).map_or('?', |c| c.to_ascii_uppercase()))
        .collect()
}

pub fn parse_word(text: &str) -> Result<Vec<usize>> {
    text.trim()
        .chars()
        .map(|c| {
            c.to_digit(36)
                .map(|d| d as usize)
                .ok_or_else(|| Error::Malformed(format!("symbol {c:?} in word {text:?}")))
        })
        .collect()
}

/// `nd / (nd - n^2 + Σ w_i^2)` when the denominator is positive.
pub fn ccc_bound(n: usize, d: usize, composition: &[usize]) -> Option<Rational> {
    let (n, d) = (n as i128, d as i128);
    let squares: i128 = composition.iter().map(|&w| (w * w) as i128).sum();
    let denom = n * d - n * n + squares;
    (denom > 0).then(|| exact::rational(n * d, denom))
}

/// Bound value and whether a code of size `size` meets it exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    #[serde(serialize_with = "crate::io::serialize_opt_ratio")]
    pub bound: Option<Rational>,
    pub size: usize,
    pub optimal: bool,
}

pub fn ccc_certify(n: usize, d: usize, composition: &[usize], size: usize) -> BoundCertificate {
    certificate(ccc_bound(n, d, composition), size)
}

/// `nd / (nd - 2nw + q w^2 / (q - 1))` when the denominator is positive.
pub fn cwc_bound(n: usize, d: usize, w: usize, q: usize) -> Option<Rational> {
    if q < 2 {
        return None;
    }
    let (n, d, w, q) = (n as i128, d as i128, w as i128, q as i128);
    let denom = exact::integer(n * d - 2 * n * w) + exact::rational(q * w * w, q - 1);
    (denom > exact::integer(0)).then(|| exact::integer(n * d) / denom)
}

pub fn cwc_certify(n: usize, d: usize, w: usize, q: usize, size: usize) -> BoundCertificate {
    certificate(cwc_bound(n, d, w, q), size)
}

fn certificate(bound: Option<Rational>, size: usize) -> BoundCertificate {
    BoundCertificate {
        optimal: bound.is_some_and(|b| b == exact::integer(size as i128)),
        bound,
        size,
    }
}

/// `λ(n - 1)(m - 1) = b0^2 m - 2 b0 n + n(n - m + 1)`, the optimality condition for the
/// `(n, n, n - λ, n - b0)_m` CWC of an `(n, m, S)` ZD function with `λ = max S`.
pub fn zd_cwc_optimality(n: usize, m: usize, lambda: usize, b0: usize) -> bool {
    let (n, m, l, b) = (n as i128, m as i128, lambda as i128, b0 as i128);
    l * (n - 1) * (m - 1) == b * b * m - 2 * b * n + n * (n - m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_MAX_ORDER;
    use crate::construct::{change_point_zero, family_zn};

    #[test]
    fn coset_code_over_z11() {
        let base = family_zn(11, 5, DEFAULT_MAX_ORDER).unwrap();
        let code = build_code(&base.table).unwrap();
        assert_eq!((code.size(), code.d, code.q), (11, 7, 3));
        assert_eq!(code.constant_weight(), Some(10));
        assert_eq!(code.constant_composition(), Some(&[1, 5, 5][..]));
        assert!(cwc_certify(11, 7, 10, 3, 11).optimal);
        assert!(ccc_certify(11, 7, &[1, 5, 5], 11).optimal);
    }

    #[test]
    fn change_point_codes_for_both_zero_labels() {
        let base = family_zn(11, 5, DEFAULT_MAX_ORDER).unwrap();
        let cp = change_point_zero(&base).unwrap();
        let mut weights = Vec::new();
        for label in 0..2 {
            let code = build_code(&cp.table.with_zero_label(label).unwrap()).unwrap();
            assert_eq!(code.d, 6);
            let w = code.constant_weight().unwrap();
            assert!(cwc_certify(11, 6, w, 2, 11).optimal);
            weights.push(w);
        }
        weights.sort_unstable();
        assert_eq!(weights, vec![5, 6]);
    }

    #[test]
    fn bound_values() {
        assert_eq!(ccc_bound(11, 7, &[1, 5, 5]), Some(exact::integer(11)));
        assert_eq!(ccc_bound(11, 6, &[5, 6]), Some(exact::integer(11)));
        assert_eq!(ccc_bound(11, 1, &[5, 6]), None);
        assert_eq!(cwc_bound(11, 6, 5, 2), Some(exact::integer(11)));
        assert_eq!(cwc_bound(11, 7, 10, 3), Some(exact::integer(11)));
        assert_eq!(cwc_bound(7, 4, 5, 2), Some(exact::rational(7, 2)));
        assert_eq!(cwc_bound(10, 1, 5, 2), None);
    }

    #[test]
    fn zd_condition_examples() {
        assert!(zd_cwc_optimality(11, 3, 4, 1));
        assert!(zd_cwc_optimality(11, 2, 5, 5));
        assert!(zd_cwc_optimality(7, 3, 2, 1));
        assert!(!zd_cwc_optimality(11, 3, 5, 1));
    }

    #[test]
    fn word_validation() {
        assert!(matches!(
            verify_code(vec![vec![0, 1], vec![0, 1]], 2),
            Err(Error::DuplicateWord(0, 1))
        ));
        assert!(matches!(
            verify_code(vec![vec![0, 1], vec![0]], 2),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            verify_code(vec![vec![0, 2], vec![1, 0]], 2),
            Err(Error::SymbolOutOfRange { symbol: 2, q: 2 })
        ));
    }

    #[test]
    fn word_text_round_trip() {
        let w = parse_word("2304467A87").unwrap();
        assert_eq!(w[7], 10);
        assert_eq!(format_word(&w), "2304467A87");
        assert!(parse_word("12-3").is_err());
    }

    #[test]
    fn constant_table_has_no_code() {
        let ring = std::sync::Arc::new(crate::algebra::Ring::zn(5).unwrap());
        let f = FunctionTable::new(ring, vec![0; 5]).unwrap();
        assert!(matches!(build_code(&f), Err(Error::DuplicateWord(0, 1))));
    }
}
