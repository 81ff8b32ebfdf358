//! Difference systems of sets from preimage partitions.
//!
//! Blocks `D_i = f^{-1}(b_i)` cover a nonzero `g` once for every ordered pair `(x, y)` in
//! distinct blocks with `x - y = g`, which is `n - λ_g` times.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Element, Ring};
use crate::error::{Error, Result};
use crate::exact;
use crate::zd::FunctionTable;

#[derive(Clone, Debug)]
pub struct Dss {
    pub ring: Arc<Ring>,
    pub blocks: Vec<Vec<Element>>,
    /// `coverage[g]` for every canonical index; `coverage[0]` is always 0.
    pub coverage: Vec<usize>,
    pub rho: usize,
    pub perfect: bool,
}

impl Dss {
    pub fn n(&self) -> usize {
        self.ring.order()
    }

    pub fn q(&self) -> usize {
        self.blocks.len()
    }

    pub fn weights(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn tau(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

pub fn build_dss(f: &FunctionTable) -> Dss {
    let labels: Vec<Option<usize>> = f.values().iter().map(|&v| Some(v)).collect();
    assemble(f.ring().clone(), f.blocks(), &labels)
}

/// Exhaustive coverage of arbitrary disjoint blocks.
pub fn verify_dss(ring: Arc<Ring>, blocks: Vec<Vec<Element>>) -> Result<Dss> {
    if ring.order() < 2 {
        return Err(Error::InvalidParameter("a DSS needs a group of order >= 2".into()));
    }
    let mut labels = vec![None; ring.order()];
    for (i, block) in blocks.iter().enumerate() {
        for &x in block {
            let slot = labels.get_mut(x.index()).ok_or(Error::IndexOutOfRange {
                index: x.index(),
                order: ring.order(),
            })?;
            if slot.is_some() {
                return Err(Error::OverlappingBlocks(x.index()));
            }
            *slot = Some(i);
        }
    }
    Ok(assemble(ring, blocks, &labels))
}

fn assemble(ring: Arc<Ring>, blocks: Vec<Vec<Element>>, labels: &[Option<usize>]) -> Dss {
    let n = ring.order();
    let coverage: Vec<usize> = (0..n)
        .into_par_iter()
        .map(|g| {
            if g == 0 {
                return 0;
            }
            let g = Element::new(g);
            // pairs (y + g, y) in distinct blocks
            ring.elements()
                .filter(|&y| match (labels[ring.add(y, g).index()], labels[y.index()]) {
                    (Some(a), Some(b)) => a != b,
                    _ => false,
                })
                .count()
        })
        .collect();
    let rho = coverage[1..].iter().copied().min().unwrap_or(0);
    let perfect = coverage[1..].iter().all(|&c| c == rho);
    Dss {
        ring,
        blocks,
        coverage,
        rho,
        perfect,
    }
}

/// `√SQUARE(ρ(n - 1) + ⌈ρ(n - 1)/(q - 1)⌉)`, the least possible `τ`.
pub fn dss_bound(n: usize, q: usize, rho: usize) -> Result<u128> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("a DSS bound needs q >= 2, got {q}")));
    }
    let x = rho as u128 * (n as u128 - 1);
    Ok(exact::ceil_sqrt(x + exact::ceil_div(x, q as u128 - 1)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DssCertificate {
    pub n: usize,
    pub m: usize,
    pub lambda: usize,
    pub rho: usize,
    /// `n >= mλ`, recorded only.
    pub side_condition: bool,
    /// `n >= mλ - m + 2`.
    pub optimal_iff: bool,
    /// `n >= k(k - 1)/2 + 1` when `k` is given.
    pub sufficient_improved: Option<bool>,
    pub bound: u128,
    /// `optimal_iff` agrees with `bound == n`.
    pub bound_agrees: bool,
}

impl DssCertificate {
    pub fn optimal(&self) -> bool {
        self.bound == self.n as u128
    }
}

/// Certifies the partition DSS of an `(n, m, S)` ZD function with `λ = max S`.
pub fn dss_certify(n: usize, m: usize, lambda: usize, k: Option<usize>) -> Result<DssCertificate> {
    if lambda > n {
        return Err(Error::InvalidParameter(format!("λ = {lambda} exceeds n = {n}")));
    }
    let rho = n - lambda;
    let bound = dss_bound(n, m, rho)?;
    let optimal_iff = n + m >= m * lambda + 2;
    Ok(DssCertificate {
        n,
        m,
        lambda,
        rho,
        side_condition: n >= m * lambda,
        optimal_iff,
        sufficient_improved: k.map(|k| 2 * n >= k * (k.saturating_sub(1)) + 2),
        bound,
        bound_agrees: optimal_iff == (bound == n as u128),
    })
}
