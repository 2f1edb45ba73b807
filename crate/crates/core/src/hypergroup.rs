//! The hypergroup interface and functions on hypergroups.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measure::{Element, FiniteMeasure, CONSTRUCTION_TOL};

/// Default cap on the support size of iterated convolutions.
pub const DEFAULT_SUPPORT_CAP: usize = 100_000;

/// A hypergroup realized through its action on point masses.
///
/// Implementations must return `δ_x` for `convolve(o, x)` and `convolve(x, o)`,
/// and a symmetric result whenever [`Hypergroup::is_commutative`] holds.
pub trait Hypergroup {
    type Element: Element;

    fn identity(&self) -> Self::Element;

    /// `δ_x * δ_y`.
    fn convolve(
        &self,
        x: &Self::Element,
        y: &Self::Element,
    ) -> Result<FiniteMeasure<Self::Element>>;

    fn involution(&self, _x: &Self::Element) -> Option<Self::Element> {
        None
    }

    fn is_commutative(&self) -> bool;
}

/// A complex-valued function on hypergroup elements.
///
/// Any `Fn(&E) -> Complex64` closure is one; partial functions report the
/// element they are missing.
pub trait HypergroupFn<E> {
    fn eval(&self, x: &E) -> Result<Complex64>;
}

impl<E, F> HypergroupFn<E> for F
where
    F: Fn(&E) -> Complex64,
{
    fn eval(&self, x: &E) -> Result<Complex64> {
        Ok(self(x))
    }
}

/// Wraps a fallible closure.
pub struct Fallible<F>(pub F);

impl<E, F> HypergroupFn<E> for Fallible<F>
where
    F: Fn(&E) -> Result<Complex64>,
{
    fn eval(&self, x: &E) -> Result<Complex64> {
        (self.0)(x)
    }
}

/// A function on `{0, .., N-1}` given by its value table.
#[derive(Clone, Debug, PartialEq)]
pub struct Tabulated {
    values: Vec<Complex64>,
}

impl Tabulated {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl HypergroupFn<usize> for Tabulated {
    fn eval(&self, x: &usize) -> Result<Complex64> {
        self.values
            .get(*x)
            .copied()
            .ok_or_else(|| Error::Evaluation {
                element: format!("{x:?}"),
            })
    }
}

/// `∫ f d(μ)`.
pub fn integrate<E: Element, F: HypergroupFn<E> + ?Sized>(
    f: &F,
    mu: &FiniteMeasure<E>,
) -> Result<Complex64> {
    mu.integrate(f)
}

/// `f(x*y) = ∫ f d(δ_x * δ_y)`.
pub fn eval_at_product<H, F>(hg: &H, f: &F, x: &H::Element, y: &H::Element) -> Result<Complex64>
where
    H: Hypergroup,
    F: HypergroupFn<H::Element> + ?Sized,
{
    hg.convolve(x, y)?.integrate(f)
}

/// `μ * δ_y`, extending point-mass convolution linearly.
pub fn convolve_right<H: Hypergroup>(
    hg: &H,
    mu: &FiniteMeasure<H::Element>,
    y: &H::Element,
    cap: usize,
) -> Result<FiniteMeasure<H::Element>> {
    let parts = mu
        .support()
        .iter()
        .map(|(e, w)| Ok((*w, hg.convolve(e, y)?)))
        .collect::<Result<Vec<_>>>()?;
    let out = FiniteMeasure::mixture(parts.iter().map(|(w, m)| (*w, m)), mu.tolerance())?;
    check_cap(&out, cap)?;
    Ok(out)
}

/// `δ_x * μ`.
pub fn convolve_left<H: Hypergroup>(
    hg: &H,
    x: &H::Element,
    mu: &FiniteMeasure<H::Element>,
    cap: usize,
) -> Result<FiniteMeasure<H::Element>> {
    let parts = mu
        .support()
        .iter()
        .map(|(e, w)| Ok((*w, hg.convolve(x, e)?)))
        .collect::<Result<Vec<_>>>()?;
    let out = FiniteMeasure::mixture(parts.iter().map(|(w, m)| (*w, m)), mu.tolerance())?;
    check_cap(&out, cap)?;
    Ok(out)
}

fn check_cap<E: Element>(mu: &FiniteMeasure<E>, cap: usize) -> Result<()> {
    if mu.len() > cap {
        Err(Error::SupportCap {
            size: mu.len(),
            cap,
        })
    } else {
        Ok(())
    }
}

/// The convolution power `y^n` with `y^1 = δ_y` and `y^{k+1} = y^k * δ_y`.
pub fn convolve_power<H: Hypergroup>(
    hg: &H,
    y: &H::Element,
    n: usize,
) -> Result<FiniteMeasure<H::Element>> {
    convolve_power_capped(hg, y, n, DEFAULT_SUPPORT_CAP)
}

pub fn convolve_power_capped<H: Hypergroup>(
    hg: &H,
    y: &H::Element,
    n: usize,
    cap: usize,
) -> Result<FiniteMeasure<H::Element>> {
    if n == 0 {
        return Err(Error::arg("convolution power needs n >= 1"));
    }
    let mut acc = FiniteMeasure::point(y.clone());
    for _ in 1..n {
        acc = convolve_right(hg, &acc, y, cap)?;
    }
    Ok(acc)
}

/// Checks the identity laws `δ_o * δ_x = δ_x * δ_o = δ_x` on the given elements.
pub fn check_identity_law<H: Hypergroup>(hg: &H, xs: &[H::Element]) -> Result<()> {
    let o = hg.identity();
    for x in xs {
        for m in [hg.convolve(&o, x)?, hg.convolve(x, &o)?] {
            if (m.weight(x) - 1.0).abs() > CONSTRUCTION_TOL || m.len() != 1 {
                return Err(Error::NotAHypergroup(format!(
                    "identity law fails at {x:?}: {m:?}"
                )));
            }
        }
    }
    Ok(())
}
