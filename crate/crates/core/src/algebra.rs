//! Finite rings with a canonical element enumeration.
//!
//! Every ring is one of `Z_n`, `GF(p^r)` or a finite product of rings. Elements are
//! addressed by a canonical index in `[0, order)`:
//!
//! * `Z_n`: the residue itself;
//! * `GF(p^r)`: `Σ c_i p^i` over the coefficients `c_0..c_{r-1}` of the polynomial
//!   representative;
//! * products: mixed radix over the factor orders, first factor least significant.
//!
//! All three encodings are mixed-radix numbers whose digits add without carry, so addition
//! works uniformly on the flattened list of digit radices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on ring orders; every verification in the crate is exhaustive.
pub const DEFAULT_MAX_ORDER: usize = 1_000_000;

/// Serializable ring description. The `GF` modulus is never stored: it is re-derived as the
/// lexicographically smallest monic irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingDescriptor {
    Zn { n: usize },
    Gf { p: u64, r: u32 },
    Product { factors: Vec<RingDescriptor> },
}

impl RingDescriptor {
    pub fn zn(n: usize) -> Self {
        RingDescriptor::Zn { n }
    }

    pub fn gf(p: u64, r: u32) -> Self {
        RingDescriptor::Gf { p, r }
    }

    pub fn product(factors: Vec<RingDescriptor>) -> Self {
        RingDescriptor::Product { factors }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Zn { n } => write!(f, "Z_{n}"),
            RingDescriptor::Gf { p, r: 1 } => write!(f, "GF({p})"),
            RingDescriptor::Gf { p, r } => write!(f, "GF({p}^{r})"),
            RingDescriptor::Product { factors } => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "{factor}")?;
                }
                Ok(())
            }
        }
    }
}

/// A ring element, addressed by its canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(usize);

impl Element {
    pub const ZERO: Element = Element(0);

    pub fn new(index: usize) -> Self {
        Element(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Structured view of an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structured {
    Residue(usize),
    /// Polynomial coefficients, constant term first.
    Coefficients(Vec<usize>),
    Tuple(Vec<Structured>),
}

#[derive(Clone, Debug)]
struct GaloisField {
    p: usize,
    r: usize,
    /// Monic modulus, constant term first, length `r + 1`.
    modulus: Vec<usize>,
    /// `exp[i]` is the index of `γ^i` for a fixed primitive element `γ`.
    exp: Vec<usize>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<usize>,
}

#[derive(Clone, Debug)]
enum Kind {
    Zn(usize),
    Gf(GaloisField),
    Product(Vec<Ring>),
}

/// A fully resolved finite ring.
#[derive(Clone, Debug)]
pub struct Ring {
    descriptor: RingDescriptor,
    order: usize,
    radices: Vec<usize>,
    kind: Kind,
}

impl Ring {
    /// Resolves a descriptor with the default order cap.
    pub fn new(descriptor: &RingDescriptor) -> Result<Self> {
        Self::with_max_order(descriptor, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(descriptor: &RingDescriptor, max_order: usize) -> Result<Self> {
        let order = checked_order(descriptor)?;
        if order > max_order as u128 {
            return Err(Error::OrderTooLarge {
                order,
                max: max_order,
            });
        }
        Self::build(descriptor)
    }

    pub fn zn(n: usize) -> Result<Self> {
        Self::new(&RingDescriptor::zn(n))
    }

    pub fn gf(p: u64, r: u32) -> Result<Self> {
        Self::new(&RingDescriptor::gf(p, r))
    }

    fn build(descriptor: &RingDescriptor) -> Result<Self> {
        match descriptor {
            RingDescriptor::Zn { n } => Ok(Ring {
                descriptor: descriptor.clone(),
                order: *n,
                radices: vec![*n],
                kind: Kind::Zn(*n),
            }),
            RingDescriptor::Gf { p, r } => {
                let field = GaloisField::new(*p as usize, *r as usize)?;
                Ok(Ring {
                    descriptor: descriptor.clone(),
                    order: field.exp.len() + 1,
                    radices: vec![field.p; field.r],
                    kind: Kind::Gf(field),
                })
            }
            RingDescriptor::Product { factors } => {
                let factors = factors.iter().map(Self::build).collect::<Result<Vec<_>>>()?;
                Ok(Ring {
                    descriptor: descriptor.clone(),
                    order: factors.iter().map(|f| f.order).product(),
                    radices: factors.iter().flat_map(|f| f.radices.clone()).collect(),
                    kind: Kind::Product(factors),
                })
            }
        }
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.descriptor
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Additive digit radices, least significant first.
    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    /// The resolved `GF` modulus (constant term first) when this ring is a field `GF(p^r)`.
    pub fn modulus(&self) -> Option<&[usize]> {
        match &self.kind {
            Kind::Gf(field) => Some(&field.modulus),
            _ => None,
        }
    }

    /// Top-level factors of a product ring.
    pub fn factors(&self) -> Option<&[Ring]> {
        match &self.kind {
            Kind::Product(factors) => Some(factors),
            _ => None,
        }
    }

    pub fn element(&self, index: usize) -> Result<Element> {
        if index < self.order {
            Ok(Element(index))
        } else {
            Err(Error::IndexOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order).map(Element)
    }

    pub fn zero(&self) -> Element {
        Element(0)
    }

    pub fn one(&self) -> Element {
        match &self.kind {
            Kind::Zn(n) => Element(1 % n),
            Kind::Gf(_) => Element(1),
            Kind::Product(factors) => {
                compose(factors, &factors.iter().map(|f| f.one().0).collect::<Vec<_>>())
            }
        }
    }

    pub fn add(&self, x: Element, y: Element) -> Element {
        let (mut a, mut b) = (x.0, y.0);
        let (mut sum, mut place) = (0, 1);
        for &radix in &self.radices {
            let digit = (a % radix + b % radix) % radix;
            sum += digit * place;
            place *= radix;
            a /= radix;
            b /= radix;
        }
        Element(sum)
    }

    pub fn neg(&self, x: Element) -> Element {
        let mut a = x.0;
        let (mut out, mut place) = (0, 1);
        for &radix in &self.radices {
            let digit = (radix - a % radix) % radix;
            out += digit * place;
            place *= radix;
            a /= radix;
        }
        Element(out)
    }

    pub fn sub(&self, x: Element, y: Element) -> Element {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Element, y: Element) -> Element {
        match &self.kind {
            Kind::Zn(n) => Element(x.0 * y.0 % n),
            Kind::Gf(field) => Element(field.mul(x.0, y.0)),
            Kind::Product(factors) => {
                let xs = decompose(factors, x.0);
                let ys = decompose(factors, y.0);
                let parts: Vec<usize> = factors
                    .iter()
                    .zip(xs.iter().zip(&ys))
                    .map(|(f, (&a, &b))| f.mul(Element(a), Element(b)).0)
                    .collect();
                compose(factors, &parts)
            }
        }
    }

    pub fn pow(&self, x: Element, mut exponent: usize) -> Element {
        let mut base = x;
        let mut acc = self.one();
        while exponent > 0 {
            if exponent & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exponent >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, x: Element) -> bool {
        match &self.kind {
            Kind::Zn(n) => gcd(x.0, *n) == 1,
            Kind::Gf(_) => x.0 != 0,
            Kind::Product(factors) => decompose(factors, x.0)
                .into_iter()
                .zip(factors)
                .all(|(part, f)| f.is_unit(Element(part))),
        }
    }

    /// `1 + 1 = 0`: characteristic 2, or the zero ring.
    pub fn has_characteristic_two(&self) -> bool {
        let one = self.one();
        self.add(one, one) == self.zero()
    }

    /// Multiplicative order of a unit; `None` for non-units.
    pub fn multiplicative_order(&self, x: Element) -> Option<usize> {
        if !self.is_unit(x) {
            return None;
        }
        if let Kind::Gf(field) = &self.kind {
            let group = field.exp.len();
            return Some(group / gcd(field.log[x.0], group));
        }
        let one = self.one();
        let mut acc = x;
        let mut k = 1;
        while acc != one {
            acc = self.mul(acc, x);
            k += 1;
        }
        Some(k)
    }

    fn has_exact_order(&self, x: Element, e: usize) -> bool {
        if !self.is_unit(x) || self.pow(x, e) != self.one() {
            return false;
        }
        prime_factors(e)
            .into_iter()
            .all(|q| self.pow(x, e / q) != self.one())
    }

    /// Smallest-index unit of exact multiplicative order `e`.
    pub fn smallest_of_order(&self, e: usize) -> Option<Element> {
        if e == 0 {
            return None;
        }
        self.elements().find(|&x| self.has_exact_order(x, e))
    }

    pub fn structure(&self, x: Element) -> Result<Structured> {
        self.element(x.0)?;
        Ok(match &self.kind {
            Kind::Zn(_) => Structured::Residue(x.0),
            Kind::Gf(field) => Structured::Coefficients(field.coefficients(x.0)),
            Kind::Product(factors) => Structured::Tuple(
                decompose(factors, x.0)
                    .into_iter()
                    .zip(factors)
                    .map(|(part, f)| f.structure(Element(part)))
                    .collect::<Result<_>>()?,
            ),
        })
    }

    pub fn from_structure(&self, value: &Structured) -> Result<Element> {
        let malformed = || Error::Malformed(format!("{value:?} does not describe an element of {}", self.descriptor));
        match (&self.kind, value) {
            (Kind::Zn(n), Structured::Residue(r)) if r < n => Ok(Element(*r)),
            (Kind::Gf(field), Structured::Coefficients(c))
                if c.len() == field.r && c.iter().all(|&d| d < field.p) =>
            {
                Ok(Element(c.iter().rev().fold(0, |acc, &d| acc * field.p + d)))
            }
            (Kind::Product(factors), Structured::Tuple(parts)) if parts.len() == factors.len() => {
                let indices = factors
                    .iter()
                    .zip(parts)
                    .map(|(f, part)| f.from_structure(part).map(Element::index))
                    .collect::<Result<Vec<_>>>()?;
                Ok(compose(factors, &indices))
            }
            _ => Err(malformed()),
        }
    }

    /// The additive group is cyclic iff its digit radices are pairwise coprime.
    pub fn additive_group_is_cyclic(&self) -> bool {
        self.radices
            .iter()
            .enumerate()
            .all(|(i, &a)| self.radices[i + 1..].iter().all(|&b| gcd(a, b) == 1))
    }

    /// Additive order of `x` (orbit length of repeated addition).
    pub fn additive_order(&self, x: Element) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.zero() {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }
}

/// A multiplicative subgroup, stored as the successive powers of its generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<Element>,
    generators: Vec<Element>,
}

impl Subgroup {
    /// `⟨g⟩` for a unit `g`.
    pub fn generated_by(ring: &Ring, g: Element) -> Result<Self> {
        ring.element(g.index())?;
        let order = ring
            .multiplicative_order(g)
            .ok_or(Error::NotAUnit(g.index()))?;
        let mut elements = Vec::with_capacity(order);
        let mut acc = ring.one();
        for _ in 0..order {
            elements.push(acc);
            acc = ring.mul(acc, g);
        }
        Ok(Subgroup {
            elements,
            generators: vec![g],
        })
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.elements.contains(&x)
    }
}

/// Deterministic subgroup of order `e`.
///
/// For `Z_n` and `GF(q)` this is `⟨g⟩` for the smallest-index unit of exact order `e`. For a
/// product the generator takes, in every top-level factor, that factor's smallest element of
/// exact order `e`; then every nontrivial power differs from 1 in every component.
pub fn find_order_e_subgroup(ring: &Ring, e: usize) -> Result<Subgroup> {
    if e == 0 {
        return Err(Error::InvalidParameter("subgroup order must be positive".into()));
    }
    let generator = match &ring.kind {
        Kind::Product(factors) => {
            let parts = factors
                .iter()
                .map(|f| f.smallest_of_order(e).map(Element::index))
                .collect::<Option<Vec<_>>>()
                .ok_or(Error::NoElementOfOrder(e))?;
            compose(factors, &parts)
        }
        _ => ring.smallest_of_order(e).ok_or(Error::NoElementOfOrder(e))?,
    };
    Subgroup::generated_by(ring, generator)
}

/// Every unit of order `e`, ascending by index, as generators of distinct candidate
/// subgroups (duplicates of an earlier subgroup are skipped).
pub fn order_e_subgroups(ring: &Ring, e: usize) -> impl Iterator<Item = Subgroup> + '_ {
    let mut seen: Vec<Vec<Element>> = Vec::new();
    ring.elements()
        .filter(move |&x| e > 0 && ring.has_exact_order(x, e))
        .filter_map(move |g| {
            let subgroup = Subgroup::generated_by(ring, g).ok()?;
            let mut key = subgroup.elements.clone();
            key.sort_unstable();
            if seen.contains(&key) {
                None
            } else {
                seen.push(key);
                Some(subgroup)
            }
        })
}

/// `(G - 1) \ {0} ⊂ R^×`.
pub fn check_unit_difference(ring: &Ring, subgroup: &Subgroup) -> bool {
    first_unit_difference_failure(ring, subgroup).is_none()
}

pub(crate) fn first_unit_difference_failure(ring: &Ring, subgroup: &Subgroup) -> Option<Element> {
    let one = ring.one();
    subgroup
        .elements()
        .iter()
        .copied()
        .filter(|&g| g != one)
        .find(|&g| !ring.is_unit(ring.sub(g, one)))
}

/// Membership of `-1` in `G`.
///
/// Under the unit-difference condition, `-1 ∈ G` exactly when `|G|` is even or `1 + 1 = 0`;
/// a disagreement is reported as an internal error.
pub fn contains_minus_one(ring: &Ring, subgroup: &Subgroup) -> Result<bool> {
    let member = subgroup.contains(ring.neg(ring.one()));
    if check_unit_difference(ring, subgroup) {
        let predicted = subgroup.order().is_multiple_of(2) || ring.has_characteristic_two();
        if predicted != member {
            return Err(Error::Internal(format!(
                "-1 membership {member} disagrees with the parity rule for a subgroup of order {} in {}",
                subgroup.order(),
                ring.descriptor()
            )));
        }
    }
    Ok(member)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Prime-power factorization `[(p, r)]`, ascending in `p`.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut r = 0;
        while n.is_multiple_of(d) {
            n /= d;
            r += 1;
        }
        if r > 0 {
            out.push((d, r));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn checked_order(descriptor: &RingDescriptor) -> Result<u128> {
    match descriptor {
        RingDescriptor::Zn { n } => {
            if *n == 0 {
                Err(Error::InvalidParameter("Z_n needs n >= 1".into()))
            } else {
                Ok(*n as u128)
            }
        }
        RingDescriptor::Gf { p, r } => {
            if !is_prime(*p) {
                return Err(Error::NotPrime(*p));
            }
            if *r == 0 {
                return Err(Error::InvalidParameter("GF(p^r) needs r >= 1".into()));
            }
            (*p as u128)
                .checked_pow(*r)
                .ok_or_else(|| Error::InvalidParameter(format!("{p}^{r} overflows")))
        }
        RingDescriptor::Product { factors } => {
            if factors.is_empty() {
                return Err(Error::InvalidParameter("a product needs at least one factor".into()));
            }
            factors.iter().try_fold(1u128, |acc, f| {
                acc.checked_mul(checked_order(f)?)
                    .ok_or_else(|| Error::InvalidParameter("product order overflows".into()))
            })
        }
    }
}

fn decompose(factors: &[Ring], mut index: usize) -> Vec<usize> {
    factors
        .iter()
        .map(|f| {
            let part = index % f.order;
            index /= f.order;
            part
        })
        .collect()
}

fn compose(factors: &[Ring], parts: &[usize]) -> Element {
    let mut index = 0;
    for (f, &part) in factors.iter().zip(parts).rev() {
        index = index * f.order + part;
    }
    Element(index)
}

impl GaloisField {
    fn new(p: usize, r: usize) -> Result<Self> {
        let modulus = smallest_irreducible(p, r).ok_or_else(|| {
            Error::Internal(format!("no monic irreducible polynomial of degree {r} over Z_{p}"))
        })?;
        let mut field = GaloisField {
            p,
            r,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables()?;
        Ok(field)
    }

    fn coefficients(&self, mut index: usize) -> Vec<usize> {
        (0..self.r)
            .map(|_| {
                let c = index % self.p;
                index /= self.p;
                c
            })
            .collect()
    }

    fn index_of(&self, coefficients: &[usize]) -> usize {
        coefficients.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul_slow(&self, a: usize, b: usize) -> usize {
        let product = poly_mul(&self.coefficients(a), &self.coefficients(b), self.p);
        self.index_of(&poly_rem(&product, &self.modulus, self.p)[..self.r])
    }

    fn build_tables(&mut self) -> Result<()> {
        let q = self.p.pow(self.r as u32);
        let group = q - 1;
        for candidate in 1..q {
            let mut exp = Vec::with_capacity(group);
            let mut acc = 1;
            loop {
                exp.push(acc);
                acc = self.mul_slow(acc, candidate);
                if acc == 1 || exp.len() > group {
                    break;
                }
            }
            if exp.len() == group {
                let mut log = vec![0; q];
                for (i, &x) in exp.iter().enumerate() {
                    log[x] = i;
                }
                self.exp = exp;
                self.log = log;
                return Ok(());
            }
        }
        Err(Error::Internal(format!("GF({}^{}) has no primitive element", self.p, self.r)))
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a] + self.log[b]) % self.exp.len()]
        }
    }
}

fn poly_mul(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Remainder modulo a monic polynomial; the result is padded to at least `deg(m)` entries.
fn poly_rem(a: &[usize], monic: &[usize], p: usize) -> Vec<usize> {
    let degree = monic.len() - 1;
    let mut rem = a.to_vec();
    rem.resize(rem.len().max(degree), 0);
    for top in (degree..rem.len()).rev() {
        let lead = rem[top];
        if lead == 0 {
            continue;
        }
        for (k, &c) in monic.iter().enumerate() {
            let slot = top - degree + k;
            rem[slot] = (rem[slot] + p * p - lead * c % p) % p;
        }
    }
    rem
}

/// Monic polynomials of degree `d`, as coefficient vectors (constant first) ordered by
/// `(c_0, c_1, ..., c_{d-1})` ascending.
fn monic_polynomials(p: usize, d: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..p.pow(d as u32)).map(move |t| {
        let mut coeffs = vec![0; d + 1];
        let mut rest = t;
        for i in (0..d).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        coeffs[d] = 1;
        coeffs
    })
}

pub(crate) fn is_irreducible(poly: &[usize], p: usize) -> bool {
    let degree = poly.len() - 1;
    (1..=degree / 2).all(|d| {
        monic_polynomials(p, d).all(|divisor| poly_rem(poly, &divisor, p)[..d].iter().any(|&c| c != 0))
    })
}

/// Lexicographically smallest monic irreducible polynomial of degree `r` over `Z_p`.
pub fn smallest_irreducible(p: usize, r: usize) -> Option<Vec<usize>> {
    monic_polynomials(p, r).find(|poly| is_irreducible(poly, p))
}
