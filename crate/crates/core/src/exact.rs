//! Exact integer and rational helpers shared by the bound calculators.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

/// Exact rational used for averages and bounds.
pub type Rational = Ratio<i128>;

pub fn rational(numer: i128, denom: i128) -> Rational {
    Ratio::new(numer, denom)
}

pub fn integer(value: i128) -> Rational {
    Ratio::from_integer(value)
}

/// Smallest integer `>= value`.
pub fn ceil(value: &Rational) -> i128 {
    value.ceil().to_integer()
}

/// `⌈a / b⌉` for `b > 0`.
pub fn ceil_div(a: u128, b: u128) -> u128 {
    a.div_ceil(b)
}

/// Smallest `s` with `s * s >= x`, i.e. `√SQUARE(x)`.
pub fn ceil_sqrt(x: u128) -> u128 {
    let s = x.isqrt();
    if s * s == x {
        s
    } else {
        s + 1
    }
}

/// `"p/q"` rendering with an explicit denominator.
pub fn format_ratio(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn parse_ratio(text: &str) -> Option<Rational> {
    let (p, q) = text.split_once('/').unwrap_or((text, "1"));
    let p: i128 = p.trim().parse().ok()?;
    let q: i128 = q.trim().parse().ok()?;
    (!q.is_zero()).then(|| rational(p, q))
}

/// `value <= bound` where both sides are exact.
pub fn square_within(value: i128, bound: &Rational) -> bool {
    !bound.is_negative() && integer(value * value) <= *bound
}
