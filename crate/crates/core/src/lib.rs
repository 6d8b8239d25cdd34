//! Exact truncated q-series engine for rank-2 wall-crossing sums, Hilbert-scheme
//! generating functions and the universal blowup functions on the ruled surface
//! `F1` and its one-point blowup.
//!
//! Series live on a fixed `1/24` exponent grid in `q` with sparse Laurent
//! polynomial coefficients in `x, y` (see [`qseries`]). Every quotient that
//! appears in a generating function is carried as an explicit numerator and
//! denominator and compared by cross-multiplication.
//!
//! With the default `parallel` feature the hot loops (series products, index
//! sequence enumeration, finite-field point counts) run on rayon; without it
//! the same code paths run sequentially and produce identical results.

pub mod checks;
pub mod error;
pub mod hilb;
pub mod lattice;
pub mod oracle;
pub mod par;
pub mod qseries;
pub mod universal;
pub mod wallcross;

pub use error::{Error, Result};
pub use par::Strategy;
pub use qseries::{HodgePoly, QExp, QSeries};
