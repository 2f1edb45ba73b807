//! Forward-mode differentiation over the complex numbers.
//!
//! [`Dual`] carries a value and its derivative with respect to a single
//! complex parameter. Every evaluator in this crate that depends on a
//! spectral parameter is written against [`Scalar`], so the same code path
//! yields either plain values (`Complex64`) or exact parameter derivatives
//! (`Dual`).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

/// Arithmetic needed by the recurrence, series and ODE evaluators.
pub trait Scalar:
    Copy
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Add<Complex64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
    + Mul<Complex64, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn constant(z: Complex64) -> Self;
    fn real(x: f64) -> Self {
        Self::constant(Complex64::new(x, 0.0))
    }
    /// The primal value.
    fn value(&self) -> Complex64;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn is_finite(&self) -> bool;
}

impl Scalar for Complex64 {
    fn constant(z: Complex64) -> Self {
        z
    }
    fn value(&self) -> Complex64 {
        *self
    }
    fn exp(self) -> Self {
        Complex64::exp(self)
    }
    fn ln(self) -> Self {
        Complex64::ln(self)
    }
    fn sqrt(self) -> Self {
        Complex64::sqrt(self)
    }
    fn sinh(self) -> Self {
        Complex64::sinh(self)
    }
    fn cosh(self) -> Self {
        Complex64::cosh(self)
    }
    fn is_finite(&self) -> bool {
        Complex64::is_finite(*self)
    }
}

/// `value + ε·deriv` with `ε² = 0`.
#[derive(Clone, Copy, PartialEq)]
pub struct Dual {
    pub value: Complex64,
    pub deriv: Complex64,
}

impl Dual {
    pub const fn new(value: Complex64, deriv: Complex64) -> Self {
        Self { value, deriv }
    }

    /// The independent variable: derivative seeded with 1.
    pub fn variable(value: Complex64) -> Self {
        Self::new(value, Complex64::new(1.0, 0.0))
    }

    pub fn constant(value: Complex64) -> Self {
        Self::new(value, Complex64::new(0.0, 0.0))
    }

    /// `self^p` for a constant complex exponent.
    pub fn powc(self, p: Complex64) -> Self {
        let v = self.value.powc(p);
        Self::new(v, p * self.value.powc(p - 1.0) * self.deriv)
    }
}

impl fmt::Debug for Dual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ε({})", self.value, self.deriv)
    }
}

impl Add for Dual {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.value + rhs.value, self.deriv + rhs.deriv)
    }
}

impl Sub for Dual {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.value - rhs.value, self.deriv - rhs.deriv)
    }
}

impl Mul for Dual {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.value * rhs.value,
            self.value * rhs.deriv + self.deriv * rhs.value,
        )
    }
}

impl Div for Dual {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let v = self.value / rhs.value;
        Self::new(v, (self.deriv - v * rhs.deriv) / rhs.value)
    }
}

impl Neg for Dual {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.value, -self.deriv)
    }
}

impl Add<f64> for Dual {
    type Output = Self;
    fn add(self, rhs: f64) -> Self {
        Self::new(self.value + rhs, self.deriv)
    }
}

impl Add<Complex64> for Dual {
    type Output = Self;
    fn add(self, rhs: Complex64) -> Self {
        Self::new(self.value + rhs, self.deriv)
    }
}

impl Mul<f64> for Dual {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.value * rhs, self.deriv * rhs)
    }
}

impl Div<f64> for Dual {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        Self::new(self.value / rhs, self.deriv / rhs)
    }
}

impl Mul<Complex64> for Dual {
    type Output = Self;
    fn mul(self, rhs: Complex64) -> Self {
        Self::new(self.value * rhs, self.deriv * rhs)
    }
}

impl AddAssign for Dual {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for Dual {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for Dual {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl Scalar for Dual {
    fn constant(z: Complex64) -> Self {
        Dual::constant(z)
    }
    fn value(&self) -> Complex64 {
        self.value
    }
    fn exp(self) -> Self {
        let e = self.value.exp();
        Self::new(e, e * self.deriv)
    }
    fn ln(self) -> Self {
        Self::new(self.value.ln(), self.deriv / self.value)
    }
    fn sqrt(self) -> Self {
        let s = self.value.sqrt();
        Self::new(s, self.deriv / (s * 2.0))
    }
    fn sinh(self) -> Self {
        Self::new(self.value.sinh(), self.value.cosh() * self.deriv)
    }
    fn cosh(self) -> Self {
        Self::new(self.value.cosh(), self.value.sinh() * self.deriv)
    }
    fn is_finite(&self) -> bool {
        self.value.is_finite() && self.deriv.is_finite()
    }
}

/// Value and derivative of `f` at `z` in one dual-number pass.
pub fn differentiate<F>(f: F, z: Complex64) -> (Complex64, Complex64)
where
    F: FnOnce(Dual) -> Dual,
{
    let d = f(Dual::variable(z));
    (d.value, d.deriv)
}

/// Central difference `(f(z+h) - f(z-h)) / 2h` along the real direction.
///
/// Only used as an independent cross-check of dual-number derivatives.
pub fn central_difference<F>(f: F, z: Complex64, h: f64) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    (f(z + h) - f(z - h)) / (2.0 * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_rule() {
        let a = Dual::new(c(2.0, 1.0), c(3.0, 0.0));
        let b = Dual::new(c(-1.0, 0.5), c(0.0, 2.0));
        let p = a * b;
        assert_eq!(p.value, a.value * b.value);
        assert_eq!(p.deriv, a.value * b.deriv + a.deriv * b.value);
    }

    #[test]
    fn quotient_matches_product_inverse() {
        let a = Dual::new(c(1.5, -0.5), c(0.3, 0.7));
        let b = Dual::new(c(0.4, 2.0), c(-1.0, 0.2));
        let q = a / b;
        let back = q * b;
        assert!((back.value - a.value).norm() < 1e-14);
        assert!((back.deriv - a.deriv).norm() < 1e-14);
    }

    #[test]
    fn elementary_functions_against_central_differences() {
        let z = c(0.7, 0.3);
        let h = 1e-5;
        let cases: [(fn(Dual) -> Dual, fn(Complex64) -> Complex64); 5] = [
            (|d| d.sinh(), |z| z.sinh()),
            (|d| d.cosh(), |z| z.cosh()),
            (|d| d.exp(), |z| z.exp()),
            (|d| d.ln(), |z| z.ln()),
            (|d| d.sqrt(), |z| z.sqrt()),
        ];
        for (fd, fz) in cases {
            let (_, d) = differentiate(fd, z);
            let num = central_difference(fz, z, h);
            assert!((d - num).norm() / d.norm() < 1e-8, "{d} vs {num}");
        }
    }

    #[test]
    fn powc_derivative() {
        let p = c(1.0, 1.0);
        let (v, d) = differentiate(|x| x.powc(p), c(2.0, 0.0));
        assert!((v - c(2.0, 0.0).powc(p)).norm() < 1e-14);
        let num = central_difference(|x| x.powc(p), c(2.0, 0.0), 1e-5);
        assert!((d - num).norm() < 1e-8);
    }

    #[test]
    fn sinh_double_angle() {
        // sinh 2λ = 2 sinh λ cosh λ holds for values and derivatives alike.
        let l = Dual::variable(c(0.4, -0.2));
        let lhs = (l * 2.0).sinh();
        let rhs = l.sinh() * l.cosh() * 2.0;
        assert!((lhs.value - rhs.value).norm() < 1e-14);
        assert!((lhs.deriv - rhs.deriv).norm() < 1e-14);
    }
}
