//! Generated operations `T(x,y) = f^(-1)(F(f(x), f(y)))` on the unit interval.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cells;
pub mod classify;
pub mod error;
pub mod generated;
pub mod interval_set;
pub mod mono_fn;
pub mod oracle;
pub mod scalar;
pub mod tnorm;
pub mod verify;

pub use error::{Error, Result};
pub use interval_set::{Interval, IntervalSet};
pub use mono_fn::{AnalyticForm, Piece, PiecewiseIncreasingFn};
pub use scalar::{Rational, Scalar};
pub use tnorm::{ChildKind, Semantics, Summand, TNormExpr};
pub use generated::{GeneratedT, eval_t};
pub use verify::{Verdict, Witness};
pub use classify::{classify, Classification, TClass};
pub use oracle::{compare_closed_form, grid_assoc_search, GridSpec};
