//! Exact Fourier analysis of pseudo-Boolean functions `f: {-1,1}^n -> R`.
//!
//! Functions are held as sparse multilinear expansions with exact rational
//! coefficients ([`FourierExpansion`]) or as dense truth tables
//! ([`TruthTable`]). On top of that the crate computes degree, Fourier width
//! and exact even moments, checks width-based hypercontractive inequalities
//! in exact arithmetic, and applies the `(4,2)` inequality to kernelize
//! weighted MaxLin-AA instances.
//!
//! Cube points are indexed by `u64`: bit `i-1` is 0 for `x_i = +1` and 1 for
//! `x_i = -1`. The same convention is used by truth tables, the transform and
//! the brute-force solver.
//!
//! Data-parallel loops run on rayon when the `parallel` feature is enabled;
//! see [`Execution`].

#![forbid(unsafe_code)]

pub mod bounds;
mod error;
pub mod exec;
mod expansion;
pub mod maxlin;
pub mod moments;
pub mod suite;
mod table;
pub mod transform;
mod varset;

pub use error::{Error, Result};
pub use exec::{Execution, Limits};
pub use expansion::{make_expansion, point_from_index, rational, FourierExpansion, Rational};
pub use table::TruthTable;
pub use varset::VarSet;
