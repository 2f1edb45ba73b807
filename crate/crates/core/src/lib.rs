//! Exponentials and sine functions on hypergroups.
//!
//! A function `f` on a hypergroup is an `m`-sine function for the exponential
//! `m` when `f(x*y) = f(x) m(y) + f(y) m(x)`, the left side meaning the
//! integral of `f` against `δ_x * δ_y`. This crate builds several concrete
//! hypergroups, their exponential families and sine functions, and provides
//! residual checkers that certify the classification of sine functions on
//! each of them numerically.
//!
//! - [`finite`]: hypergroups given by a structure tensor, sine-space solver.
//! - [`poly`]: one-variable polynomial hypergroups.
//! - [`su2`]: the SU(2) hypergroup on the nonnegative integers.
//! - [`multipoly`]: products of polynomial hypergroups.
//! - [`sturm`]: Sturm–Liouville hypergroups on the half-line.
//! - [`coset`]: the double-coset hypergroup of the affine group by `{(±1, 0)}`.

pub mod coset;
pub mod dual;
pub mod error;
pub mod finite;
pub mod hypergroup;
pub mod measure;
pub mod multipoly;
pub mod poly;
pub mod residual;
pub mod sturm;
pub mod su2;

pub use dual::{Dual, Scalar};
pub use error::{Error, Result};
pub use finite::{compact_vanishing_check, sine_space, FiniteHypergroupSpec};
pub use hypergroup::{convolve_power, integrate, Hypergroup, HypergroupFn, Tabulated};
pub use measure::FiniteMeasure;
pub use residual::{exp_residual, power_identity_check, sine_residual, ResidualReport};

/// Tolerance for verification checks unless a check states its own.
pub const VERIFY_TOL: f64 = 1e-9;
