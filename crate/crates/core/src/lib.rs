//! Zero-difference (ZD) functions over finite rings.
//!
//! A function `f: A -> Z_m` on a finite abelian group is `(n, m, S)` zero-difference when
//! `S` collects the counts `λ_α = |{x : f(x + α) = f(x)}|` over all nonzero `α`. When `S`
//! is a singleton the function is zero-difference balanced (ZDB).
//!
//! The crate covers:
//!
//! * [`algebra`]: finite rings (`Z_n`, `GF(p^r)`, finite products) with a canonical
//!   element enumeration and multiplicative subgroups.
//! * [`zd`]: function tables, exhaustive zero-difference spectra, classification and the
//!   exact counting identities every table satisfies.
//! * [`construct`]: the coset ZDB construction and the change-point technique.
//! * [`codes`], [`dss`], [`fhs`]: cyclic-shift codes, difference systems of sets and
//!   frequency-hopping sequences built from a table, with exact bound certificates.
//! * [`cli`]: the `zdkit` command-line front end.
//! * [`reproduce`]: rebuilds published examples and table rows and compares parameters.

pub mod algebra;
pub mod cli;
pub mod codes;
pub mod construct;
pub mod dss;
mod error;
pub mod exact;
pub mod fhs;
pub mod io;
pub mod reproduce;
pub mod zd;

pub use algebra::{Element, Ring, RingDescriptor, Structured, Subgroup, DEFAULT_MAX_ORDER};
pub use error::{Error, Result};
pub use zd::FunctionTable;
