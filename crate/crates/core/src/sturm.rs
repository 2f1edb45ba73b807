//! Sturm–Liouville hypergroups on the half-line.
//!
//! The exponential family solves `Φ'' + (A'/A) Φ' = λ Φ` with `Φ(0) = 1`,
//! `Φ'(0) = 0`; the `m_λ`-sine functions solve the same equation forced by
//! `c Φ`. Both are integrated with classical RK4 after a Frobenius-series
//! launch off the regular singular point at the origin. For `A ≡ 1` the
//! convolution is explicit and checked directly.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::dual::{Dual, Scalar};
use crate::error::{Error, Result};
use crate::hypergroup::{Hypergroup, HypergroupFn};
use crate::measure::{FiniteMeasure, CONSTRUCTION_TOL};
use crate::residual::{exp_residual, sine_residual, ResidualReport};

pub const DEFAULT_XMAX: f64 = 5.0;
pub const DEFAULT_STEP: f64 = 1e-3;
/// Integration aborts once a solution component exceeds this magnitude.
pub const OVERFLOW_GUARD: f64 = 1e12;
/// Launch point is `max(10 h, MIN_LAUNCH)`, rounded up to a grid node.
pub const MIN_LAUNCH: f64 = 1e-3;

type LogDerivative = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// The coefficient function `A`, represented by its log-derivative `A'/A`.
///
/// Near the origin `A'/A ≈ k/x` with singular index `k`; `k = 2α + 1` for the
/// power family and `k = 0` for `A ≡ 1`.
#[derive(Clone)]
pub enum SturmLiouvilleFunction {
    Constant,
    /// `A(x) = x^{2α+1}`, `α ≥ −½`.
    Power {
        alpha: f64,
    },
    /// A user-supplied `A'/A` with the given singular index at the origin.
    Custom {
        name: String,
        log_derivative: LogDerivative,
        singular_index: f64,
    },
}

impl fmt::Debug for SturmLiouvilleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant => write!(f, "A≡1"),
            Self::Power { alpha } => write!(f, "A=x^(2·{alpha}+1)"),
            Self::Custom {
                name,
                singular_index,
                ..
            } => write!(f, "{name} (index {singular_index})"),
        }
    }
}

impl SturmLiouvilleFunction {
    pub fn power(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < -0.5 {
            return Err(Error::arg(format!(
                "power family needs α ≥ −½, got {alpha}"
            )));
        }
        Ok(Self::Power { alpha })
    }

    pub fn custom<F>(
        name: impl Into<String>,
        log_derivative: F,
        singular_index: f64,
    ) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !singular_index.is_finite() || singular_index < 0.0 {
            return Err(Error::arg(format!(
                "singular index must be ≥ 0, got {singular_index}"
            )));
        }
        Ok(Self::Custom {
            name: name.into(),
            log_derivative: Arc::new(log_derivative),
            singular_index,
        })
    }

    pub fn singular_index(&self) -> f64 {
        match self {
            Self::Constant => 0.0,
            Self::Power { alpha } => 2.0 * alpha + 1.0,
            Self::Custom { singular_index, .. } => *singular_index,
        }
    }

    /// `A'(x)/A(x)` for `x > 0`.
    pub fn log_derivative(&self, x: f64) -> f64 {
        match self {
            Self::Constant => 0.0,
            Self::Power { alpha } => (2.0 * alpha + 1.0) / x,
            Self::Custom { log_derivative, .. } => log_derivative(x),
        }
    }
}

/// A solution sampled on `0 = x_0 < x_1 < .. < x_N = x_max`.
#[derive(Clone, Debug)]
pub struct OdeSolution {
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub derivs: Vec<Complex64>,
    pub lambda: Complex64,
    pub c: Complex64,
    pub h: f64,
    /// Finite-difference ODE residual per node, zero where not computed.
    pub residuals: Vec<f64>,
    /// Per-node scale the residuals are measured against.
    pub scales: Vec<f64>,
}

impl OdeSolution {
    /// `max_i residual_i / (h² · scale_i)` over interior nodes.
    pub fn scaled_residual(&self) -> f64 {
        self.residuals
            .iter()
            .zip(&self.scales)
            .map(|(r, s)| r / (self.h * self.h * s))
            .fold(0.0, f64::max)
    }

    pub fn max_abs_value(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `max_i |values_i − g(x_i)|`.
    pub fn max_error_against<G: Fn(f64) -> Complex64>(&self, g: G) -> f64 {
        self.grid
            .iter()
            .zip(&self.values)
            .map(|(x, v)| (v - g(*x)).norm())
            .fold(0.0, f64::max)
    }

    /// `max_i |values_i − other.values_i|` on a shared grid.
    pub fn max_difference(&self, other: &OdeSolution) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::arg("solutions live on different grids"));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

struct Grid {
    nodes: Vec<f64>,
    launch: usize,
}

fn make_grid(x_max: f64, h: f64) -> Result<Grid> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::arg(format!("step must be positive, got {h}")));
    }
    if !(x_max > 0.0 && x_max.is_finite()) {
        return Err(Error::arg(format!("x_max must be positive, got {x_max}")));
    }
    let n = ((x_max / h) - 1e-9).ceil().max(1.0) as usize;
    let mut nodes: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
    nodes.push(x_max);
    let launch_x = (10.0 * h).max(MIN_LAUNCH);
    let launch = ((launch_x / h) - 1e-9).ceil() as usize;
    Ok(Grid {
        launch: launch.min(n),
        nodes,
    })
}

/// Frobenius coefficients of the pair `(Φ, f)` in powers of `x²`:
/// `(2j)(2j+k−1) a_j = λ a_{j−1}` and `(2j)(2j+k−1) b_j = λ b_{j−1} + c a_{j−1}`.
fn series_at<T: Scalar>(k: f64, lambda: T, c: T, x: f64) -> [T; 4] {
    let x2 = x * x;
    let mut a = T::real(1.0);
    let mut b = T::real(0.0);
    let mut out = [a, T::real(0.0), b, T::real(0.0)];
    let mut pow = 1.0; // x^{2j-2}
    for j in 1..60 {
        let jf = j as f64;
        let d = 2.0 * jf * (2.0 * jf + k - 1.0);
        let next_b = (lambda * b + c * a) / d;
        a = lambda * a / d;
        b = next_b;
        let va = a * (pow * x2);
        let vb = b * (pow * x2);
        out[0] += va;
        out[1] += a * (2.0 * jf * pow * x);
        out[2] += vb;
        out[3] += b * (2.0 * jf * pow * x);
        pow *= x2;
        if va.value().norm() + vb.value().norm()
            <= 1e-18 * (1.0 + out[0].value().norm() + out[2].value().norm())
        {
            break;
        }
    }
    out
}

fn guard<T: Scalar>(state: &[T; 4], x: f64) -> Result<()> {
    for s in state {
        if !s.is_finite() || s.value().norm() > OVERFLOW_GUARD {
            return Err(Error::Range(format!(
                "solution leaves the representable range near x = {x}"
            )));
        }
    }
    Ok(())
}

/// Integrates `(Φ, Φ', f, f')` with
/// `Φ'' = λΦ − qΦ'`, `f'' = λf + cΦ − qf'`, `q = A'/A`.
fn integrate_pair<T: Scalar>(
    a: &SturmLiouvilleFunction,
    lambda: T,
    c: T,
    grid: &Grid,
) -> Result<Vec<[T; 4]>> {
    let k = a.singular_index();
    let rhs = |x: f64, s: &[T; 4]| -> [T; 4] {
        let q = a.log_derivative(x);
        [
            s[1],
            lambda * s[0] - s[1] * q,
            s[3],
            lambda * s[2] + c * s[0] - s[3] * q,
        ]
    };
    let mut out = Vec::with_capacity(grid.nodes.len());
    for &x in &grid.nodes[..=grid.launch] {
        let s = series_at(k, lambda, c, x);
        guard(&s, x)?;
        out.push(s);
    }
    for i in grid.launch..grid.nodes.len() - 1 {
        let (x, step) = (grid.nodes[i], grid.nodes[i + 1] - grid.nodes[i]);
        let s = out[i];
        let add = |s: &[T; 4], d: &[T; 4], f: f64| -> [T; 4] {
            [
                s[0] + d[0] * f,
                s[1] + d[1] * f,
                s[2] + d[2] * f,
                s[3] + d[3] * f,
            ]
        };
        let k1 = rhs(x, &s);
        let k2 = rhs(x + step / 2.0, &add(&s, &k1, step / 2.0));
        let k3 = rhs(x + step / 2.0, &add(&s, &k2, step / 2.0));
        let k4 = rhs(x + step, &add(&s, &k3, step));
        let next: [T; 4] = std::array::from_fn(|j| {
            s[j] + (k1[j] + k2[j] * 2.0 + k3[j] * 2.0 + k4[j]) * (step / 6.0)
        });
        guard(&next, grid.nodes[i + 1])?;
        out.push(next);
    }
    Ok(out)
}

/// Finite-difference residual of `y'' + q y' − λ y − forcing` on uniform interior nodes.
fn fd_residuals(
    a: &SturmLiouvilleFunction,
    lambda: Complex64,
    grid: &[f64],
    y: &[Complex64],
    forcing: &[Complex64],
) -> (Vec<f64>, Vec<f64>) {
    let n = grid.len();
    let mut res = vec![0.0; n];
    let mut scale = vec![1.0; n];
    let lam = 1.0 + lambda.norm();
    for i in 1..n.saturating_sub(1) {
        let (hl, hr) = (grid[i] - grid[i - 1], grid[i + 1] - grid[i]);
        if (hl - hr).abs() > 1e-12 * hl {
            continue;
        }
        let h = hl;
        let d2 = (y[i + 1] - y[i] * 2.0 + y[i - 1]) / (h * h);
        let d1 = (y[i + 1] - y[i - 1]) / (2.0 * h);
        let r = d2 + d1 * a.log_derivative(grid[i]) - lambda * y[i] - forcing[i];
        res[i] = r.norm();
        scale[i] = 1.0
            + lam * lam * (y[i].norm() + forcing[i].norm())
            + y[i].norm() * f64::EPSILON / (h * h * h * h);
    }
    (res, scale)
}

fn check_lambda(lambda: Complex64) -> Result<()> {
    if !lambda.is_finite() {
        return Err(Error::arg(format!("λ must be finite, got {lambda}")));
    }
    Ok(())
}

/// `Φ(·, λ)` on `[0, x_max]`.
pub fn solve_phi(
    a: &SturmLiouvilleFunction,
    lambda: Complex64,
    x_max: f64,
    h: f64,
) -> Result<OdeSolution> {
    check_lambda(lambda)?;
    let grid = make_grid(x_max, h)?;
    let zero = Complex64::new(0.0, 0.0);
    let states = integrate_pair(a, lambda, zero, &grid)?;
    let values: Vec<Complex64> = states.iter().map(|s| s[0]).collect();
    let (residuals, scales) =
        fd_residuals(a, lambda, &grid.nodes, &values, &vec![zero; values.len()]);
    Ok(OdeSolution {
        derivs: states.iter().map(|s| s[1]).collect(),
        values,
        grid: grid.nodes,
        lambda,
        c: zero,
        h,
        residuals,
        scales,
    })
}

/// The solution of `f'' + (A'/A) f' = λ f + c Φ(·, λ)`, `f(0) = f'(0) = 0`.
pub fn solve_sine(
    a: &SturmLiouvilleFunction,
    lambda: Complex64,
    c: Complex64,
    x_max: f64,
    h: f64,
) -> Result<OdeSolution> {
    check_lambda(lambda)?;
    if !c.is_finite() {
        return Err(Error::arg(format!("c must be finite, got {c}")));
    }
    let grid = make_grid(x_max, h)?;
    let states = integrate_pair(a, lambda, c, &grid)?;
    let values: Vec<Complex64> = states.iter().map(|s| s[2]).collect();
    let forcing: Vec<Complex64> = states.iter().map(|s| c * s[0]).collect();
    let (residuals, scales) = fd_residuals(a, lambda, &grid.nodes, &values, &forcing);
    Ok(OdeSolution {
        derivs: states.iter().map(|s| s[3]).collect(),
        values,
        grid: grid.nodes,
        lambda,
        c,
        h,
        residuals,
        scales,
    })
}

/// `∂_λ Φ(·, λ)`, by integrating the exponential ODE over dual numbers.
pub fn dlambda_phi(
    a: &SturmLiouvilleFunction,
    lambda: Complex64,
    x_max: f64,
    h: f64,
) -> Result<OdeSolution> {
    check_lambda(lambda)?;
    let grid = make_grid(x_max, h)?;
    let states = integrate_pair(
        a,
        Dual::variable(lambda),
        Dual::constant(Complex64::new(0.0, 0.0)),
        &grid,
    )?;
    let values: Vec<Complex64> = states.iter().map(|s| s[0].deriv).collect();
    let forcing: Vec<Complex64> = states.iter().map(|s| s[0].value).collect();
    let (residuals, scales) = fd_residuals(a, lambda, &grid.nodes, &values, &forcing);
    Ok(OdeSolution {
        derivs: states.iter().map(|s| s[1].deriv).collect(),
        values,
        grid: grid.nodes,
        lambda,
        c: Complex64::new(1.0, 0.0),
        h,
        residuals,
        scales,
    })
}

/// Largest magnitude reached by the two zero-data solutions the uniqueness
/// argument relies on: the homogeneous equation from `f(0) = f'(0) = 0`, and
/// `f − c g` with `f = solve_sine(c)` and `g = solve_sine(1)`.
pub fn homogeneous_uniqueness(
    a: &SturmLiouvilleFunction,
    lambda: Complex64,
    c: Complex64,
    x_max: f64,
    h: f64,
) -> Result<f64> {
    let zero = solve_sine(a, lambda, Complex64::new(0.0, 0.0), x_max, h)?;
    let f = solve_sine(a, lambda, c, x_max, h)?;
    let g = solve_sine(a, lambda, Complex64::new(1.0, 0.0), x_max, h)?;
    let diff = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(fv, gv)| (fv - c * gv).norm())
        .fold(0.0, f64::max);
    Ok(zero.max_abs_value().max(diff))
}

/// `cosh √w = Σ wʲ/(2j)!`, even in `√w` so no branch is chosen.
pub fn cosh_sqrt<T: Scalar>(w: T) -> T {
    if w.value().norm() < 1.0 {
        let mut term = T::real(1.0);
        let mut sum = term;
        for j in 1..30 {
            let jf = j as f64;
            term = term * w / ((2.0 * jf - 1.0) * 2.0 * jf);
            sum += term;
        }
        sum
    } else {
        w.sqrt().cosh()
    }
}

/// `sinh √w / √w = Σ wʲ/(2j+1)!`.
pub fn sinhc_sqrt<T: Scalar>(w: T) -> T {
    if w.value().norm() < 1.0 {
        let mut term = T::real(1.0);
        let mut sum = term;
        for j in 1..30 {
            let jf = j as f64;
            term = term * w / (2.0 * jf * (2.0 * jf + 1.0));
            sum += term;
        }
        sum
    } else {
        let s = w.sqrt();
        s.sinh() / s
    }
}

/// Closed-form `Φ(x, λ)` and `∂_λΦ(x, λ)` where one is known: `A ≡ 1` and `A = x²`.
pub fn closed_form(
    a: &SturmLiouvilleFunction,
    x: f64,
    lambda: Complex64,
) -> Option<(Complex64, Complex64)> {
    let w = Dual::variable(lambda) * (x * x);
    let d = match a {
        SturmLiouvilleFunction::Constant => cosh_sqrt(w),
        SturmLiouvilleFunction::Power { alpha } if *alpha == -0.5 => cosh_sqrt(w),
        SturmLiouvilleFunction::Power { alpha } if *alpha == 0.5 => sinhc_sqrt(w),
        _ => return None,
    };
    Some((d.value, d.deriv))
}

/// The half-line with `δ_x * δ_y = ½ δ_{x+y} + ½ δ_{|x−y|}`, the hypergroup of `A ≡ 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct CoshHypergroup;

impl Hypergroup for CoshHypergroup {
    type Element = f64;

    fn identity(&self) -> f64 {
        0.0
    }

    fn convolve(&self, x: &f64, y: &f64) -> Result<FiniteMeasure<f64>> {
        if !(*x >= 0.0 && *y >= 0.0 && x.is_finite() && y.is_finite()) {
            return Err(Error::arg(format!(
                "half-line elements must be finite and ≥ 0, got {x}, {y}"
            )));
        }
        FiniteMeasure::from_weights([(x + y, 0.5), ((x - y).abs(), 0.5)], CONSTRUCTION_TOL)
    }

    fn involution(&self, x: &f64) -> Option<f64> {
        Some(*x)
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// `x ↦ cosh(√λ x)`.
#[derive(Clone, Copy, Debug)]
pub struct CoshExponential {
    pub lambda: Complex64,
}

impl HypergroupFn<f64> for CoshExponential {
    fn eval(&self, x: &f64) -> Result<Complex64> {
        Ok(cosh_sqrt(self.lambda * (x * x)))
    }
}

/// `x ↦ c ∂_λ cosh(√λ x) = c x² sinhc(√λ x) / 2`.
#[derive(Clone, Copy, Debug)]
pub struct CoshSine {
    pub c: Complex64,
    pub lambda: Complex64,
}

impl HypergroupFn<f64> for CoshSine {
    fn eval(&self, x: &f64) -> Result<Complex64> {
        Ok(self.c * sinhc_sqrt(self.lambda * (x * x)) * (x * x / 2.0))
    }
}

#[derive(Clone, Debug)]
pub struct CoshCheck {
    pub exponential: ResidualReport,
    pub sine: ResidualReport,
}

impl CoshCheck {
    pub fn merged(&self) -> ResidualReport {
        self.exponential.clone().merge(self.sine.clone())
    }
}

/// Checks the exponential and sine equations for `A ≡ 1` with the explicit convolution.
pub fn cosh_hypergroup_check(lambda: Complex64, samples: &[(f64, f64)]) -> Result<CoshCheck> {
    let m = CoshExponential { lambda };
    let f = CoshSine {
        c: Complex64::new(1.0, 0.0),
        lambda,
    };
    Ok(CoshCheck {
        exponential: exp_residual(&CoshHypergroup, &m, samples)?,
        sine: sine_residual(&CoshHypergroup, &f, &m, samples)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lambda_zero_gives_constant_one() {
        for a in [
            SturmLiouvilleFunction::Constant,
            SturmLiouvilleFunction::power(1.5).unwrap(),
        ] {
            let s = solve_phi(&a, c(0.0, 0.0), 2.0, 1e-2).unwrap();
            assert!(s.values.iter().all(|v| *v == c(1.0, 0.0)));
        }
    }

    #[test]
    fn constant_a_gives_cosh() {
        let s = solve_phi(&SturmLiouvilleFunction::Constant, c(1.0, 0.0), 5.0, 1e-3).unwrap();
        assert!(s.max_error_against(|x| c(x.cosh(), 0.0)) < 1e-6);
        assert!(s.scaled_residual() < 10.0);
    }

    #[test]
    fn x_squared_gives_sinhc() {
        let a = SturmLiouvilleFunction::power(0.5).unwrap();
        let s = solve_phi(&a, c(1.0, 0.0), 5.0, 1e-3).unwrap();
        let exact = |x: f64| c(if x == 0.0 { 1.0 } else { x.sinh() / x }, 0.0);
        assert!(s.max_error_against(exact) < 1e-6);
        assert!(s.scaled_residual() < 10.0);
    }

    #[test]
    fn sine_closed_forms() {
        let a = SturmLiouvilleFunction::Constant;
        let s = solve_sine(&a, c(1.0, 0.0), c(1.0, 0.0), 5.0, 1e-3).unwrap();
        assert!(s.max_error_against(|x| c(x * x.sinh() / 2.0, 0.0)) < 1e-5);
        let s = solve_sine(&a, c(0.0, 0.0), c(1.0, 0.0), 5.0, 1e-3).unwrap();
        assert!(s.max_error_against(|x| c(x * x / 2.0, 0.0)) < 1e-9);
        let s = solve_sine(&a, c(1.0, 0.0), c(0.0, 0.0), 5.0, 1e-3).unwrap();
        assert_eq!(s.max_abs_value(), 0.0);
    }

    #[test]
    fn dlambda_closed_forms() {
        let s = dlambda_phi(&SturmLiouvilleFunction::Constant, c(1.0, 0.0), 5.0, 1e-3).unwrap();
        assert_eq!(s.values[0], c(0.0, 0.0));
        assert!(s.max_error_against(|x| c(x * x.sinh() / 2.0, 0.0)) < 1e-5);
        let a = SturmLiouvilleFunction::power(0.5).unwrap();
        let s = dlambda_phi(&a, c(1.0, 0.0), 5.0, 1e-3).unwrap();
        let exact = |x: f64| {
            c(
                if x == 0.0 {
                    0.0
                } else {
                    (x * x.cosh() - x.sinh()) / (2.0 * x)
                },
                0.0,
            )
        };
        assert!(s.max_error_against(exact) < 1e-5);
    }

    #[test]
    fn closed_form_matches_explicit_formulas() {
        for x in [0.0, 0.3, 1.0, 4.0] {
            let (v, d) = closed_form(&SturmLiouvilleFunction::Constant, x, c(1.0, 0.0)).unwrap();
            assert!((v - x.cosh()).norm() < 1e-12 * x.cosh());
            assert!((d - x * x.sinh() / 2.0).norm() < 1e-12 * (1.0 + x * x.sinh()));
        }
        assert!(closed_form(
            &SturmLiouvilleFunction::power(2.0).unwrap(),
            1.0,
            c(1.0, 0.0)
        )
        .is_none());
    }

    #[test]
    fn series_start_is_even_in_root() {
        // Near λ = 0 both branches of √λ give the same values.
        let tiny = c(1e-14, -3e-14);
        assert!((cosh_sqrt(tiny * 4.0) - 1.0).norm() < 1e-12);
        assert!((sinhc_sqrt(c(-1.0, 0.0)) - (1.0f64).sin()).norm() < 1e-15);
        assert!((cosh_sqrt(c(-4.0, 0.0)) - (2.0f64).cos()).norm() < 1e-15);
    }

    #[test]
    fn overflow_is_a_range_error() {
        let r = solve_phi(&SturmLiouvilleFunction::Constant, c(900.0, 0.0), 5.0, 1e-3);
        assert!(matches!(r, Err(Error::Range(_))));
    }

    #[test]
    fn bad_steps_are_rejected() {
        let a = SturmLiouvilleFunction::Constant;
        assert!(solve_phi(&a, c(1.0, 0.0), 5.0, 0.0).is_err());
        assert!(solve_phi(&a, c(1.0, 0.0), -1.0, 1e-3).is_err());
        assert!(SturmLiouvilleFunction::power(-0.7).is_err());
    }

    #[test]
    fn grid_ends_at_x_max() {
        let s = solve_phi(&SturmLiouvilleFunction::Constant, c(0.5, 0.0), 1.05, 0.1).unwrap();
        assert_eq!(*s.grid.last().unwrap(), 1.05);
        assert_eq!(s.grid[0], 0.0);
        assert!(s.max_error_against(|x| c((0.5f64.sqrt() * x).cosh(), 0.0)) < 1e-6);
    }

    #[test]
    fn custom_matches_power_family() {
        let custom = SturmLiouvilleFunction::custom("x^2", |x| 2.0 / x, 2.0).unwrap();
        let a = solve_phi(&custom, c(0.7, 0.2), 3.0, 1e-3).unwrap();
        let b = solve_phi(
            &SturmLiouvilleFunction::power(0.5).unwrap(),
            c(0.7, 0.2),
            3.0,
            1e-3,
        )
        .unwrap();
        assert!(a.max_difference(&b).unwrap() < 1e-14);
    }

    #[test]
    fn cosh_product_to_sum() {
        let check = cosh_hypergroup_check(c(0.8, 0.0), &[(1.0, 2.5)]).unwrap();
        assert!(check.exponential.max_rel < 1e-12);
        let check = cosh_hypergroup_check(c(1.0, 0.0), &[(1.0, 1.0)]).unwrap();
        assert!(check.sine.max_abs < 1e-10);
    }

    #[test]
    fn cosh_convolution_with_identity() {
        let m = CoshHypergroup.convolve(&1.5, &0.0).unwrap();
        assert!(m.is_point_mass_at(&1.5));
        assert!(CoshHypergroup.convolve(&-1.0, &0.0).is_err());
    }
}
