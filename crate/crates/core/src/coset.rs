//! The double-coset hypergroup of the affine group `G = {(x, u) : x ≠ 0}`
//! modulo `K = {(1, 0), (−1, 0)}`.
//!
//! Group law `(x,u)(y,v) = (xy, xv + u)`. A double coset is stored by its
//! canonical representative `(|x|, |u|)`, so functions on cosets are
//! compatible by construction. Convolution averages over `K`:
//! `f[(x,u) * (y,v)] = ½ f(xy, xv+u) + ½ f(−xy, −xv+u)`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hypergroup::{Hypergroup, HypergroupFn};
use crate::measure::{FiniteMeasure, CONSTRUCTION_TOL};
use crate::residual::{sine_residual, ResidualAccumulator, ResidualReport};

#[derive(Clone, Copy, PartialEq)]
pub struct AffineElement {
    pub x: f64,
    pub u: f64,
}

impl AffineElement {
    pub fn new(x: f64, u: f64) -> Result<Self> {
        if x == 0.0 || !x.is_finite() || !u.is_finite() {
            return Err(Error::arg(format!(
                "affine element needs finite x ≠ 0 and finite u, got ({x}, {u})"
            )));
        }
        Ok(Self { x, u })
    }

    pub const IDENTITY: AffineElement = AffineElement { x: 1.0, u: 0.0 };
}

impl fmt::Debug for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.u)
    }
}

pub fn group_mul(p: AffineElement, q: AffineElement) -> AffineElement {
    AffineElement {
        x: p.x * q.x,
        u: p.x * q.u + p.u,
    }
}

pub fn group_inv(p: AffineElement) -> AffineElement {
    AffineElement {
        x: 1.0 / p.x,
        u: -p.u / p.x,
    }
}

/// `K (x,u) K`, stored as `(|x|, |u|)`.
#[derive(Clone, Copy, PartialEq)]
pub struct DoubleCoset {
    x: f64,
    u: f64,
}

impl DoubleCoset {
    pub fn new(x: f64, u: f64) -> Result<Self> {
        Ok(AffineElement::new(x, u)?.into())
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn representative(&self) -> AffineElement {
        AffineElement {
            x: self.x,
            u: self.u,
        }
    }
}

impl From<AffineElement> for DoubleCoset {
    fn from(p: AffineElement) -> Self {
        // `abs` also maps −0.0 to 0.0, so equal cosets compare equal.
        Self {
            x: p.x.abs(),
            u: p.u.abs(),
        }
    }
}

impl fmt::Debug for DoubleCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({}, {})K", self.x, self.u)
    }
}

/// `G//K` with the averaged convolution. Not commutative.
#[derive(Clone, Copy, Debug, Default)]
pub struct CosetHypergroup;

impl Hypergroup for CosetHypergroup {
    type Element = DoubleCoset;

    fn identity(&self) -> DoubleCoset {
        AffineElement::IDENTITY.into()
    }

    fn convolve(&self, p: &DoubleCoset, q: &DoubleCoset) -> Result<FiniteMeasure<DoubleCoset>> {
        let (p, q) = (p.representative(), q.representative());
        let k = AffineElement { x: -1.0, u: 0.0 };
        let a = group_mul(p, q);
        let b = group_mul(group_mul(p, k), q);
        FiniteMeasure::from_weights([(a.into(), 0.5), (b.into(), 0.5)], CONSTRUCTION_TOL)
    }

    fn involution(&self, p: &DoubleCoset) -> Option<DoubleCoset> {
        Some(group_inv(p.representative()).into())
    }

    fn is_commutative(&self) -> bool {
        false
    }
}

/// `f[(x,u) * (y,v)] = ½ f(xy, xv+u) + ½ f(−xy, −xv+u)`.
pub fn coset_apply<F>(f: &F, p: AffineElement, q: AffineElement) -> Result<Complex64>
where
    F: HypergroupFn<DoubleCoset> + ?Sized,
{
    let a = AffineElement {
        x: p.x * q.x,
        u: p.x * q.u + p.u,
    };
    let b = AffineElement {
        x: -p.x * q.x,
        u: -p.x * q.u + p.u,
    };
    Ok((f.eval(&a.into())? + f.eval(&b.into())?) * 0.5)
}

/// `|x|^λ = exp(λ ln|x|)`.
fn abs_pow(x: f64, lambda: Complex64) -> Complex64 {
    (lambda * x.abs().ln()).exp()
}

/// The exponential `m(x, u) = |x|^λ`.
#[derive(Clone, Copy, Debug)]
pub struct CosetExponential {
    pub lambda: Complex64,
}

impl HypergroupFn<DoubleCoset> for CosetExponential {
    fn eval(&self, p: &DoubleCoset) -> Result<Complex64> {
        Ok(abs_pow(p.x, self.lambda))
    }
}

/// The sine function `f(x, u) = c |x|^λ ln|x|`.
#[derive(Clone, Copy, Debug)]
pub struct CosetSine {
    pub c: Complex64,
    pub lambda: Complex64,
}

impl HypergroupFn<DoubleCoset> for CosetSine {
    fn eval(&self, p: &DoubleCoset) -> Result<Complex64> {
        Ok(self.c * abs_pow(p.x, self.lambda) * p.x.ln())
    }
}

pub fn coset_exponential(lambda: Complex64) -> CosetExponential {
    CosetExponential { lambda }
}

pub fn coset_sine(c: Complex64, lambda: Complex64) -> CosetSine {
    CosetSine { c, lambda }
}

/// Canonical pairs for the residual checkers.
pub fn coset_pairs(samples: &[(AffineElement, AffineElement)]) -> Vec<(DoubleCoset, DoubleCoset)> {
    samples
        .iter()
        .map(|(p, q)| ((*p).into(), (*q).into()))
        .collect()
}

/// Residual of `m(xy, xv+u) + m(xy, xv−u) = 2 m(x,u) m(y,v)` for the
/// candidate `m(x, u) = |x|^λ cosh(αu)`, which is compatible but not an
/// exponential unless `α = 0`.
pub fn falsify_dalembert_alpha(
    lambda: Complex64,
    alpha: Complex64,
    samples: &[(AffineElement, AffineElement)],
) -> Result<ResidualReport> {
    if alpha == Complex64::new(0.0, 0.0) {
        return Err(Error::arg(
            "α = 0 gives the genuine exponential |x|^λ; nothing to falsify",
        ));
    }
    let m = |p: AffineElement| abs_pow(p.x, lambda) * (alpha * p.u).cosh();
    let mut acc = ResidualAccumulator::new();
    for (p, q) in samples {
        let l1 = m(AffineElement {
            x: p.x * q.x,
            u: p.x * q.u + p.u,
        });
        let l2 = m(AffineElement {
            x: p.x * q.x,
            u: p.x * q.u - p.u,
        });
        let r = m(*p) * m(*q) * 2.0;
        acc.record(l1 + l2 - r, r.norm(), || format!("{p:?}, {q:?}"));
    }
    acc.finish()
}

/// Whether `f(x,u) = f(−x,u) = f(x,−u) = f(−x,−u)` holds exactly on the samples.
pub fn verify_compat<F>(f: F, samples: &[AffineElement]) -> bool
where
    F: Fn(AffineElement) -> Complex64,
{
    samples.iter().all(|p| {
        let v = f(*p);
        [(-p.x, p.u), (p.x, -p.u), (-p.x, -p.u)]
            .iter()
            .all(|(x, u)| f(AffineElement { x: *x, u: *u }) == v)
    })
}

/// Residual of the square-norm equation `g(u+v) + g(u−v) = 2g(u) + 2g(v)` for `g(u) = a u²`.
pub fn square_norm_residual(a: Complex64, samples: &[(f64, f64)]) -> Result<ResidualReport> {
    let g = |u: f64| a * (u * u);
    let mut acc = ResidualAccumulator::new();
    for (u, v) in samples {
        let rhs = (g(*u) + g(*v)) * 2.0;
        acc.record(g(u + v) + g(u - v) - rhs, rhs.norm(), || {
            format!("(u, v) = ({u}, {v})")
        });
    }
    acc.finish()
}

/// The candidate `f(y, u) = c|y|^λ ln|y| + a u² |y|^λ` left over after the
/// square-norm step.
#[derive(Clone, Copy, Debug)]
pub struct QuadraticCandidate {
    pub a: Complex64,
    pub c: Complex64,
    pub lambda: Complex64,
}

impl HypergroupFn<DoubleCoset> for QuadraticCandidate {
    fn eval(&self, p: &DoubleCoset) -> Result<Complex64> {
        let m = abs_pow(p.x, self.lambda);
        Ok(m * (self.c * p.x.ln() + self.a * (p.u * p.u)))
    }
}

#[derive(Clone, Debug)]
pub struct SquareNormCheck {
    /// Must vanish: `u ↦ a u²` solves the square-norm equation.
    pub square_norm: ResidualReport,
    /// Must not vanish when `a ≠ 0`: the quadratic term violates the sine equation.
    pub candidate: ResidualReport,
}

pub fn square_norm_check(
    a: Complex64,
    lambda: Complex64,
    uv_samples: &[(f64, f64)],
    pairs: &[(AffineElement, AffineElement)],
) -> Result<SquareNormCheck> {
    let candidate = QuadraticCandidate {
        a,
        c: Complex64::new(1.0, 0.0),
        lambda,
    };
    Ok(SquareNormCheck {
        square_norm: square_norm_residual(a, uv_samples)?,
        candidate: sine_residual(
            &CosetHypergroup,
            &candidate,
            &coset_exponential(lambda),
            &coset_pairs(pairs),
        )?,
    })
}

/// On the group itself: `a(x,u) = ln|x|` is additive and `f = a·m` with
/// `m = |x|^λ` satisfies `f(pq) = f(p)m(q) + f(q)m(p)`.
pub fn group_sine_check(
    lambda: Complex64,
    samples: &[(AffineElement, AffineElement)],
) -> Result<ResidualReport> {
    let a = |p: AffineElement| p.x.abs().ln();
    let m = |p: AffineElement| abs_pow(p.x, lambda);
    let f = |p: AffineElement| m(p) * a(p);
    let mut additive = ResidualAccumulator::new();
    let mut sine = ResidualAccumulator::new();
    for (p, q) in samples {
        let pq = group_mul(*p, *q);
        let (ap, aq) = (a(*p), a(*q));
        additive.record(
            Complex64::new(a(pq) - ap - aq, 0.0),
            ap.abs() + aq.abs(),
            || format!("additivity at {p:?}, {q:?}"),
        );
        let (t1, t2) = (f(*p) * m(*q), f(*q) * m(*p));
        sine.record(f(pq) - t1 - t2, t1.norm() + t2.norm(), || {
            format!("sine at {p:?}, {q:?}")
        });
    }
    Ok(additive.finish()?.merge(sine.finish()?))
}
