//! Residual checkers for the exponential and sine functional equations.
//!
//! A residual is always reported twice: as an absolute value and relative to
//! `1 + Σ|terms|`, where the terms are the products on the right-hand side of
//! the equation being checked. The witness is the sample with the largest
//! relative residual.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergroup::{
    convolve_left, convolve_power, eval_at_product, Hypergroup, HypergroupFn, DEFAULT_SUPPORT_CAP,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub max_abs: f64,
    pub max_rel: f64,
    pub witness: String,
    pub samples: usize,
}

impl ResidualReport {
    /// Combines two reports over disjoint sample sets.
    pub fn merge(self, other: ResidualReport) -> ResidualReport {
        let witness = if other.max_rel > self.max_rel {
            other.witness
        } else {
            self.witness
        };
        ResidualReport {
            max_abs: self.max_abs.max(other.max_abs),
            max_rel: self.max_rel.max(other.max_rel),
            witness,
            samples: self.samples + other.samples,
        }
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max_abs={:.3e} max_rel={:.3e} over {} samples (worst at {})",
            self.max_abs, self.max_rel, self.samples, self.witness
        )
    }
}

/// Running maximum of residuals.
#[derive(Debug, Default)]
pub struct ResidualAccumulator {
    max_abs: f64,
    max_rel: f64,
    witness: Option<String>,
    samples: usize,
}

impl ResidualAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `|residual|` with relative scale `1 + scale`.
    ///
    /// NaN residuals are recorded as infinite so they can never pass.
    pub fn record<W: FnOnce() -> String>(&mut self, residual: Complex64, scale: f64, witness: W) {
        let mut abs = residual.norm();
        if abs.is_nan() {
            abs = f64::INFINITY;
        }
        let rel = abs / (1.0 + scale);
        self.max_abs = self.max_abs.max(abs);
        if self.witness.is_none() || rel > self.max_rel {
            self.max_rel = rel;
            self.witness = Some(witness());
        }
        self.samples += 1;
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn finish(self) -> Result<ResidualReport> {
        match self.witness {
            Some(witness) => Ok(ResidualReport {
                max_abs: self.max_abs,
                max_rel: self.max_rel,
                witness,
                samples: self.samples,
            }),
            None => Err(Error::arg("no samples to check")),
        }
    }
}

/// Residual of `f(x*y) = f(x) m(y) + f(y) m(x)` over the sample pairs.
pub fn sine_residual<H, F, M>(
    hg: &H,
    f: &F,
    m: &M,
    pairs: &[(H::Element, H::Element)],
) -> Result<ResidualReport>
where
    H: Hypergroup,
    F: HypergroupFn<H::Element> + ?Sized,
    M: HypergroupFn<H::Element> + ?Sized,
{
    if pairs.is_empty() {
        return Err(Error::arg("sine_residual needs at least one pair"));
    }
    let mut acc = ResidualAccumulator::new();
    for (x, y) in pairs {
        let lhs = eval_at_product(hg, f, x, y)?;
        let t1 = f.eval(x)? * m.eval(y)?;
        let t2 = f.eval(y)? * m.eval(x)?;
        acc.record(lhs - t1 - t2, t1.norm() + t2.norm(), || {
            format!("({x:?}, {y:?})")
        });
    }
    acc.finish()
}

/// Residual of `m(x*y) = m(x) m(y)` over the sample pairs.
pub fn exp_residual<H, M>(
    hg: &H,
    m: &M,
    pairs: &[(H::Element, H::Element)],
) -> Result<ResidualReport>
where
    H: Hypergroup,
    M: HypergroupFn<H::Element> + ?Sized,
{
    if pairs.is_empty() {
        return Err(Error::arg("exp_residual needs at least one pair"));
    }
    let mut acc = ResidualAccumulator::new();
    for (x, y) in pairs {
        let lhs = eval_at_product(hg, m, x, y)?;
        let rhs = m.eval(x)? * m.eval(y)?;
        acc.record(lhs - rhs, rhs.norm(), || format!("({x:?}, {y:?})"));
    }
    acc.finish()
}

/// Residual of `f(x*yⁿ) = f(x) m(y)ⁿ + n f(y) m(x) m(y)ⁿ⁻¹` for `n = 1..=n_max`.
pub fn power_identity_check<H, F, M>(
    hg: &H,
    f: &F,
    m: &M,
    x: &H::Element,
    y: &H::Element,
    n_max: usize,
) -> Result<ResidualReport>
where
    H: Hypergroup,
    F: HypergroupFn<H::Element> + ?Sized,
    M: HypergroupFn<H::Element> + ?Sized,
{
    if n_max == 0 {
        return Err(Error::arg("power_identity_check needs n_max >= 1"));
    }
    let (fx, fy, mx, my) = (f.eval(x)?, f.eval(y)?, m.eval(x)?, m.eval(y)?);
    let mut acc = ResidualAccumulator::new();
    for n in 1..=n_max {
        let power = convolve_power(hg, y, n)?;
        let mu = convolve_left(hg, x, &power, DEFAULT_SUPPORT_CAP)?;
        let lhs = mu.integrate(f)?;
        let t1 = fx * my.powu(n as u32);
        let t2 = fy * mx * my.powu(n as u32 - 1) * n as f64;
        acc.record(lhs - t1 - t2, t1.norm() + t2.norm(), || {
            format!("x={x:?}, y={y:?}, n={n}")
        });
    }
    acc.finish()
}

/// All ordered pairs from `elements × elements`.
pub fn all_pairs<E: Clone>(elements: &[E]) -> Vec<(E, E)> {
    elements
        .iter()
        .flat_map(|x| elements.iter().map(move |y| (x.clone(), y.clone())))
        .collect()
}

/// Pairs `(n, k)` with `n, k ≤ max`.
pub fn index_pairs(max: usize) -> Vec<(usize, usize)> {
    let idx: Vec<usize> = (0..=max).collect();
    all_pairs(&idx)
}
