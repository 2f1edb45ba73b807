//! The SU(2) hypergroup on the nonnegative integers.
//!
//! `δ_k * δ_n = Σ' (l+1)/((k+1)(n+1)) δ_l` over `l = |k-n|, |k-n|+2, .., k+n`.
//! Its exponentials are `Φ(n, λ) = sinh((n+1)λ) / ((n+1) sinh λ)`, and for
//! `sinh λ ≠ 0` every `Φ(·, λ)`-sine function is a multiple of `∂_λ Φ(·, λ)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dual::{Dual, Scalar};
use crate::error::{Error, Result};
use crate::hypergroup::{Hypergroup, HypergroupFn, Tabulated};
use crate::measure::{FiniteMeasure, CONSTRUCTION_TOL};
use crate::residual::{ResidualAccumulator, ResidualReport};

/// Below this `|sinh λ|` the exponential is evaluated from its even series.
pub const SERIES_THRESHOLD: f64 = 1e-6;

/// `δ_k * δ_n`.
pub fn su2_convolve(k: usize, n: usize) -> FiniteMeasure<usize> {
    let denom = ((k + 1) * (n + 1)) as f64;
    let lo = k.abs_diff(n);
    let atoms = (lo..=k + n).step_by(2).map(|l| (l, (l + 1) as f64 / denom));
    FiniteMeasure::from_weights(atoms, CONSTRUCTION_TOL)
        .expect("SU(2) weights form a probability measure")
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Su2Hypergroup;

impl Hypergroup for Su2Hypergroup {
    type Element = usize;

    fn identity(&self) -> usize {
        0
    }

    fn convolve(&self, x: &usize, y: &usize) -> Result<FiniteMeasure<usize>> {
        Ok(su2_convolve(*x, *y))
    }

    fn involution(&self, x: &usize) -> Option<usize> {
        Some(*x)
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// Coefficients `q_j` of `Φ(n, λ) = Σ_j q_j λ^{2j}`, `j = 0..=3`.
fn series_coefficients(n: usize) -> [f64; 4] {
    // sinh(Nλ)/(Nλ) divided by sinh(λ)/λ, both as series in t = λ².
    let big_n = (n + 1) as f64;
    let fact = [1.0, 6.0, 120.0, 5040.0];
    let num: [f64; 4] = std::array::from_fn(|j| big_n.powi(2 * j as i32) / fact[j]);
    let mut q = [0.0; 4];
    for j in 0..4 {
        let carried: f64 = (1..=j).map(|i| q[j - i] / fact[i]).sum();
        q[j] = num[j] - carried;
    }
    q
}

/// `Φ(n, λ)`; a [`Dual`] argument also carries `∂_λ Φ`.
///
/// Uses `Φ(n, λ + iπ) = (-1)^n Φ(n, λ)` to move `λ` into `|Im λ| ≤ π/2`,
/// where the only removable singularity is the origin.
pub fn su2_phi_scalar<T: Scalar>(n: usize, lambda: T) -> T {
    let shift = (lambda.value().im / PI).round();
    let reduced = lambda + Complex64::new(0.0, -shift * PI);
    let flip = (shift as i64).rem_euclid(2) == 1 && n % 2 == 1;
    let value = if reduced.value().sinh().norm() < SERIES_THRESHOLD {
        let q = series_coefficients(n);
        let t = reduced * reduced;
        ((t * q[3] + q[2]) * t + q[1]) * t + q[0]
    } else {
        let big_n = (n + 1) as f64;
        (reduced * big_n).sinh() / (reduced.sinh() * big_n)
    };
    if flip {
        -value
    } else {
        value
    }
}

pub fn su2_phi(n: usize, lambda: Complex64) -> Complex64 {
    su2_phi_scalar(n, lambda)
}

/// `∂_λ Φ(n, λ)` by dual numbers on the same guarded evaluation.
pub fn su2_dphi(n: usize, lambda: Complex64) -> Complex64 {
    su2_phi_scalar(n, Dual::variable(lambda)).deriv
}

/// The exponential `n ↦ Φ(n, λ)`.
#[derive(Clone, Copy, Debug)]
pub struct Su2Exponential {
    pub lambda: Complex64,
}

impl Su2Exponential {
    pub fn tabulate(&self, n_max: usize) -> Tabulated {
        Tabulated::new((0..=n_max).map(|n| su2_phi(n, self.lambda)).collect())
    }
}

impl HypergroupFn<usize> for Su2Exponential {
    fn eval(&self, n: &usize) -> Result<Complex64> {
        Ok(su2_phi(*n, self.lambda))
    }
}

/// The sine function `n ↦ c·∂_λ Φ(n, λ)`.
#[derive(Clone, Copy, Debug)]
pub struct Su2Sine {
    pub scale: Complex64,
    pub lambda: Complex64,
}

impl Su2Sine {
    pub fn tabulate(&self, n_max: usize) -> Tabulated {
        Tabulated::new(
            (0..=n_max)
                .map(|n| self.scale * su2_dphi(n, self.lambda))
                .collect(),
        )
    }
}

impl HypergroupFn<usize> for Su2Sine {
    fn eval(&self, n: &usize) -> Result<Complex64> {
        Ok(self.scale * su2_dphi(*n, self.lambda))
    }
}

/// The additive function `n ↦ c·n(n+2)`, the sine function for `m ≡ 1`.
pub fn su2_additive(c: Complex64) -> impl Fn(&usize) -> Complex64 + Copy {
    move |n: &usize| c * (n * (n + 2)) as f64
}

/// Residual of
/// `(n+3) f(n+2) - 2(n+2) cosh λ f(n+1) + (n+1) f(n) = 2 f(1) (n+2) m(n+1)`
/// and of its form for `g(n) = (n+1) f(n)`, for `n = 0..=n_max`.
///
/// `cosh λ` is read off as `m(1)`.
pub fn su2_recurrence_check<F, M>(f: &F, m: &M, n_max: usize) -> Result<ResidualReport>
where
    F: HypergroupFn<usize> + ?Sized,
    M: HypergroupFn<usize> + ?Sized,
{
    let cosh = m.eval(&1)?;
    let f1 = f.eval(&1)?;
    let fv = (0..=n_max + 2)
        .map(|n| f.eval(&n))
        .collect::<Result<Vec<_>>>()?;
    let g = |n: usize| fv[n] * (n + 1) as f64;
    let mut acc = ResidualAccumulator::new();
    for n in 0..=n_max {
        let k = n as f64;
        let rhs = f1 * m.eval(&(n + 1))? * (2.0 * (k + 2.0));
        let terms = [
            fv[n + 2] * (k + 3.0),
            -(cosh * fv[n + 1] * (2.0 * (k + 2.0))),
            fv[n] * (k + 1.0),
        ];
        let scale: f64 = terms.iter().map(|t| t.norm()).sum::<f64>() + rhs.norm();
        acc.record(terms.iter().sum::<Complex64>() - rhs, scale, || {
            format!("f-form n={n}")
        });

        let gterms = [g(n + 2), -(cosh * g(n + 1) * 2.0), g(n)];
        let gscale: f64 = gterms.iter().map(|t| t.norm()).sum::<f64>() + rhs.norm();
        acc.record(gterms.iter().sum::<Complex64>() - rhs, gscale, || {
            format!("g-form n={n}")
        });
    }
    acc.finish()
}

/// Solves the sine recurrence forward from `f(0) = 0`, `f(1) = f1`.
pub fn su2_propagate(f1: Complex64, lambda: Complex64, n_max: usize) -> Vec<Complex64> {
    let cosh = su2_phi(1, lambda);
    let mut f = vec![Complex64::new(0.0, 0.0); n_max.max(1) + 1];
    f[1] = f1;
    for n in 0..n_max.saturating_sub(1) {
        let k = n as f64;
        let rhs = f1 * su2_phi(n + 1, lambda) * (2.0 * (k + 2.0));
        f[n + 2] = (rhs + cosh * f[n + 1] * (2.0 * (k + 2.0)) - f[n] * (k + 1.0)) / (k + 3.0);
    }
    f.truncate(n_max + 1);
    f
}

/// Propagates `ψ(n+2) = 2 cosh λ ψ(n+1) - ψ(n)` from the given start values.
pub fn su2_homogeneous(
    psi0: Complex64,
    psi1: Complex64,
    lambda: Complex64,
    n_max: usize,
) -> Vec<Complex64> {
    let cosh = lambda.cosh();
    let mut psi = vec![psi0, psi1];
    for n in 0..n_max.saturating_sub(1) {
        psi.push(cosh * psi[n + 1] * 2.0 - psi[n]);
    }
    psi.truncate(n_max + 1);
    psi
}

/// Compares the propagated sine function with `(f1 / sinh λ)·∂_λ Φ`.
///
/// Only meaningful where `a = ∂_λ Φ(1, λ) = sinh λ` is nonzero; other `λ`
/// are rejected.
pub fn su2_necessity_check(
    f1: Complex64,
    lambda: Complex64,
    n_max: usize,
) -> Result<ResidualReport> {
    let a = su2_dphi(1, lambda);
    if a.norm() < SERIES_THRESHOLD {
        return Err(Error::arg(format!(
            "∂_λ Φ(1, λ) = {a} vanishes at λ = {lambda}; the classification does not apply"
        )));
    }
    let f = su2_propagate(f1, lambda, n_max);
    let mut acc = ResidualAccumulator::new();
    for (n, v) in f.iter().enumerate() {
        let want = f1 / a * su2_dphi(n, lambda);
        acc.record(v - want, want.norm(), || format!("n={n}"));
    }
    acc.finish()
}
