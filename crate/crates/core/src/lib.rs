//! Folding, unfolding and orbit analysis for planar difference systems.
//!
//! A planar system `x' = f(n, x, y)`, `y' = g(n, x, y)` whose first component is
//! semi-invertible in `y` folds into a scalar *core* recursion
//! `s[n+2] = phi(n, s[n], s[n+1])` plus a *passive* equation `y[n] = h(n, x[n], x[n+1])`
//! that reconstructs the second component without any iteration. The inverse
//! construction (unfolding) synthesizes `g` from `f` and a prescribed core.
//!
//! The crate is `no_std` and only needs `alloc`. Modules:
//!
//! * [`seq`]: time-indexed coefficient sequences (constant, periodic, convergent, explicit).
//! * [`expr`]: a closed expression grammar for maps of `(n, u, v)`.
//! * [`folding`]: semi-inversion, folding, reconstruction and unfolding.
//! * [`rational`]: the homogeneous rational system, its first-order core and the
//!   quadratic/logistic reduction.
//! * [`catalog`]: the concrete rational systems with closed-form foldings.
//! * [`system`]: evaluable planar systems.
//! * [`dynamics`]: orbits, cycle detection, Lyapunov estimates, classification and sweeps.
#![no_std]
// negated comparisons deliberately treat NaN as out of range
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod dynamics;
pub mod error;
pub mod expr;
pub mod folding;
pub(crate) mod math;
pub mod rational;
pub mod seq;
pub mod system;

pub use catalog::CatalogSystem;
pub use error::{Error, Result};
pub use expr::MapExpr;
pub use folding::{Folding, ScalarCore, SemiInversion};
pub use rational::{QuadraticCoreParams, RationalParams};
pub use seq::CoeffSeq;
pub use system::{PlanarMap, SystemSpec};

/// Denominators with `|d| < SINGULAR_EPS * max(1, |numerator|)` are treated as zero,
/// unless `|d| >= SINGULAR_EPS`, in which case the (huge) quotient is reported as overflow.
pub const SINGULAR_EPS: f64 = 1e-12;

/// Orbits with a component whose magnitude exceeds this bound are declared unbounded.
pub const OVERFLOW_THRESHOLD: f64 = 1e8;
