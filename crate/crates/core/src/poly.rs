//! Polynomial hypergroups in one variable.
//!
//! The polynomials are normalized by `P_n(1) = 1` and generated by
//!
//! ```text
//! x P_n(x) = a_n P_{n+1}(x) + b_n P_n(x) + c_n P_{n-1}(x),   P_0 = 1,  P_1 = (x - b_0) / a_0.
//! ```
//!
//! The convolution `δ_n * δ_k` is the measure of linearization coefficients
//! of `P_n P_k` in the `P`-basis. Exponentials are `n ↦ P_n(λ)`; the sine
//! functions for `m_λ` are the multiples of `n ↦ P_n'(λ)`.

use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dual::{Dual, Scalar};
use crate::error::{Error, Result};
use crate::finite::nullspace;
use crate::hypergroup::{Hypergroup, HypergroupFn, Tabulated};
use crate::measure::FiniteMeasure;
use crate::residual::{ResidualAccumulator, ResidualReport};

/// Tolerance on linearization weights (sum and sign).
pub const LINEARIZATION_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
enum Coefficients {
    Chebyshev,
    Legendre,
    Table {
        a: Vec<f64>,
        b: Vec<f64>,
        c: Vec<f64>,
    },
}

/// Recurrence data of a polynomial hypergroup.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeTermRecurrence {
    name: String,
    coeffs: Coefficients,
}

/// On-disk form: `{ "name", "a": [...], "b": [...], "c": [...], "closed_form": optional }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RecurrenceFile {
    pub name: String,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
}

impl ThreeTermRecurrence {
    /// Chebyshev polynomials of the first kind: `a_n = c_n = 1/2`, `b_n = 0`, `P_1 = x`.
    pub fn chebyshev() -> Self {
        Self {
            name: "chebyshev".into(),
            coeffs: Coefficients::Chebyshev,
        }
    }

    /// Legendre polynomials: `a_n = (n+1)/(2n+1)`, `c_n = n/(2n+1)`, `b_n = 0`.
    pub fn legendre() -> Self {
        Self {
            name: "legendre".into(),
            coeffs: Coefficients::Legendre,
        }
    }

    /// A recurrence from coefficient tables, `a[0], b[0]` giving `P_1`.
    ///
    /// `c[0]` is ignored. Polynomials are available up to degree `a.len()`.
    pub fn from_tables(
        name: impl Into<String>,
        a: Vec<f64>,
        b: Vec<f64>,
        c: Vec<f64>,
    ) -> Result<Self> {
        if a.is_empty() || a.len() != b.len() || a.len() != c.len() {
            return Err(Error::arg(
                "recurrence tables a, b, c must be nonempty and of equal length",
            ));
        }
        let rec = Self {
            name: name.into(),
            coeffs: Coefficients::Table { a, b, c },
        };
        rec.validate()?;
        Ok(rec)
    }

    fn validate(&self) -> Result<()> {
        let (a0, b0, _) = self.coefficients(0)?;
        if !(a0 > 0.0) || (a0 + b0 - 1.0).abs() > 1e-12 {
            return Err(Error::NotAHypergroup(format!(
                "need a_0 > 0 and a_0 + b_0 = 1, got a_0 = {a0}, b_0 = {b0}"
            )));
        }
        for n in 1..self.max_degree().unwrap_or(0) {
            let (a, b, c) = self.coefficients(n)?;
            if !(a > 0.0 && c > 0.0) || (a + b + c - 1.0).abs() > 1e-12 {
                return Err(Error::NotAHypergroup(format!(
                    "need a_n, c_n > 0 and a_n + b_n + c_n = 1 at n = {n}, got ({a}, {b}, {c})"
                )));
            }
        }
        Ok(())
    }

    pub fn from_file(file: RecurrenceFile) -> Result<Self> {
        match file.closed_form.as_deref() {
            None => Self::from_tables(file.name, file.a, file.b, file.c),
            Some(tag) => {
                let rec = match tag {
                    "chebyshev" => Self::chebyshev(),
                    "legendre" => Self::legendre(),
                    other => return Err(Error::arg(format!("unknown closed form {other:?}"))),
                };
                for n in 0..file.a.len() {
                    let (a, b, c) = rec.coefficients(n)?;
                    let c_ok = n == 0 || (file.c[n] - c).abs() <= 1e-12;
                    if (file.a[n] - a).abs() > 1e-12 || (file.b[n] - b).abs() > 1e-12 || !c_ok {
                        return Err(Error::arg(format!(
                            "coefficient tables disagree with closed form {tag} at n = {n}"
                        )));
                    }
                }
                Ok(Self {
                    name: file.name,
                    ..rec
                })
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    /// Tables for the first `len` coefficients.
    pub fn to_file(&self, len: usize) -> Result<RecurrenceFile> {
        let mut a = Vec::with_capacity(len);
        let mut b = Vec::with_capacity(len);
        let mut c = Vec::with_capacity(len);
        for n in 0..len {
            let (an, bn, cn) = self.coefficients(n)?;
            a.push(an);
            b.push(bn);
            c.push(cn);
        }
        let closed_form = match self.coeffs {
            Coefficients::Chebyshev => Some("chebyshev".to_string()),
            Coefficients::Legendre => Some("legendre".to_string()),
            Coefficients::Table { .. } => None,
        };
        Ok(RecurrenceFile {
            name: self.name.clone(),
            a,
            b,
            c,
            closed_form,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Highest degree that can be evaluated, `None` for closed forms.
    pub fn max_degree(&self) -> Option<usize> {
        match &self.coeffs {
            Coefficients::Table { a, .. } => Some(a.len()),
            _ => None,
        }
    }

    /// `(a_n, b_n, c_n)`, with `c_0 = 0`.
    pub fn coefficients(&self, n: usize) -> Result<(f64, f64, f64)> {
        Ok(match &self.coeffs {
            Coefficients::Chebyshev if n == 0 => (1.0, 0.0, 0.0),
            Coefficients::Chebyshev => (0.5, 0.0, 0.5),
            Coefficients::Legendre => {
                let d = (2 * n + 1) as f64;
                ((n + 1) as f64 / d, 0.0, n as f64 / d)
            }
            Coefficients::Table { a, b, c } => {
                if n >= a.len() {
                    return Err(Error::DegreeOutOfRange {
                        degree: n + 1,
                        max: a.len(),
                    });
                }
                (a[n], b[n], if n == 0 { 0.0 } else { c[n] })
            }
        })
    }

    fn exact_coefficients(&self, n: usize) -> Result<(BigRational, BigRational, BigRational)> {
        let int = |v: usize| BigRational::from_integer(BigInt::from(v));
        Ok(match &self.coeffs {
            Coefficients::Chebyshev if n == 0 => {
                (BigRational::one(), BigRational::zero(), BigRational::zero())
            }
            Coefficients::Chebyshev => {
                let half = BigRational::new(1.into(), 2.into());
                (half.clone(), BigRational::zero(), half)
            }
            Coefficients::Legendre => {
                let d = int(2 * n + 1);
                (int(n + 1) / d.clone(), BigRational::zero(), int(n) / d)
            }
            Coefficients::Table { .. } => {
                let (a, b, c) = self.coefficients(n)?;
                let conv = |x: f64| {
                    BigRational::from_float(x)
                        .ok_or_else(|| Error::arg(format!("non-finite coefficient {x}")))
                };
                (conv(a)?, conv(b)?, conv(c)?)
            }
        })
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        match self.max_degree() {
            Some(max) if n > max => Err(Error::DegreeOutOfRange { degree: n, max }),
            _ => Ok(()),
        }
    }

    /// `P_0(λ), .., P_n(λ)` by forward recurrence.
    pub fn eval_all<T: Scalar>(&self, n: usize, lambda: T) -> Result<Vec<T>> {
        self.check_degree(n)?;
        let mut out = Vec::with_capacity(n + 1);
        out.push(T::real(1.0));
        if n == 0 {
            return Ok(out);
        }
        let (a0, b0, _) = self.coefficients(0)?;
        out.push((lambda + (-b0)) / a0);
        for k in 1..n {
            let (a, b, c) = self.coefficients(k)?;
            let next = ((lambda + (-b)) * out[k] - out[k - 1] * c) / a;
            out.push(next);
        }
        Ok(out)
    }

    /// `P_n(λ)`; with a [`Dual`] argument the derivative part is `P_n'(λ)`.
    pub fn eval_p<T: Scalar>(&self, n: usize, lambda: T) -> Result<T> {
        Ok(*self.eval_all(n, lambda)?.last().expect("nonempty"))
    }

    /// `(P_n(λ), P_n'(λ))`.
    pub fn eval_with_derivative(
        &self,
        n: usize,
        lambda: Complex64,
    ) -> Result<(Complex64, Complex64)> {
        let d = self.eval_p(n, Dual::variable(lambda))?;
        Ok((d.value, d.deriv))
    }
}

/// Coefficients of `P_n P_k = Σ_l c(n,k,l) P_l`, indexed by `l` over `0..=n+k`.
///
/// Works by reduction in the `P`-basis: `P_{j+1} P_k` is obtained from
/// `P_j P_k` and `P_{j-1} P_k` through the recurrence, with multiplication by
/// `x` applied to each basis element via `x P_m = a_m P_{m+1} + b_m P_m + c_m P_{m-1}`.
fn reduce_products<T, C>(
    coeffs: C,
    n: usize,
    k: usize,
    mut visit: impl FnMut(usize, &[T]),
) -> Result<()>
where
    T: Clone
        + Zero
        + One
        + std::ops::Sub<Output = T>
        + std::ops::Mul<Output = T>
        + std::ops::Div<Output = T>,
    C: Fn(usize) -> Result<(T, T, T)>,
{
    let len = n + k + 2;
    let mut prev = vec![T::zero(); len];
    let mut cur = vec![T::zero(); len];
    cur[k] = T::one();
    visit(0, &cur);
    let mut top = k;
    for j in 0..n {
        let (aj, bj, cj) = coeffs(j)?;
        let mut next = vec![T::zero(); len];
        for m in 0..=top {
            if cur[m].is_zero() {
                continue;
            }
            let (am, bm, cm) = coeffs(m)?;
            let v = cur[m].clone();
            next[m + 1] = next[m + 1].clone() + am * v.clone();
            next[m] = next[m].clone() + (bm - bj.clone()) * v.clone();
            if m > 0 {
                next[m - 1] = next[m - 1].clone() + cm * v;
            }
        }
        for m in 0..len {
            if !prev[m].is_zero() {
                next[m] = next[m].clone() - cj.clone() * prev[m].clone();
            }
            next[m] = next[m].clone() / aj.clone();
        }
        prev = cur;
        cur = next;
        top += 1;
        visit(j + 1, &cur);
    }
    Ok(())
}

fn to_measure(
    rec: &ThreeTermRecurrence,
    n: usize,
    k: usize,
    coeffs: &[f64],
) -> Result<FiniteMeasure<usize>> {
    if let Some((l, w)) = coeffs
        .iter()
        .enumerate()
        .find(|(_, w)| **w < -LINEARIZATION_TOL)
    {
        return Err(Error::NotAHypergroup(format!(
            "{}: linearization coefficient c({n},{k},{l}) = {w} is negative",
            rec.name
        )));
    }
    let atoms = coeffs
        .iter()
        .enumerate()
        .filter(|(_, w)| **w != 0.0)
        .map(|(l, w)| (l, *w));
    FiniteMeasure::from_weights(atoms, LINEARIZATION_TOL).map_err(|e| {
        Error::NotAHypergroup(format!(
            "{}: P_{n} P_{k} does not linearize to a probability measure: {e}",
            rec.name
        ))
    })
}

/// `δ_n * δ_k` for the polynomial hypergroup of `rec`.
pub fn linearize(rec: &ThreeTermRecurrence, n: usize, k: usize) -> Result<FiniteMeasure<usize>> {
    let (lo, hi) = if n <= k { (n, k) } else { (k, n) };
    rec.check_degree(lo + hi)?;
    let mut last = Vec::new();
    reduce_products(
        |j| rec.coefficients(j),
        lo,
        hi,
        |j, v: &[f64]| {
            if j == lo {
                last = v[..=lo + hi].to_vec();
            }
        },
    )?;
    to_measure(rec, n, k, &last)
}

/// Exact linearization coefficients in rational arithmetic.
///
/// Used as an oracle for small degrees; table recurrences are converted
/// from their binary floating-point values exactly.
pub fn linearize_exact(rec: &ThreeTermRecurrence, n: usize, k: usize) -> Result<Vec<BigRational>> {
    let (lo, hi) = if n <= k { (n, k) } else { (k, n) };
    rec.check_degree(lo + hi)?;
    let mut last = Vec::new();
    reduce_products(
        |j| rec.exact_coefficients(j),
        lo,
        hi,
        |j, v: &[BigRational]| {
            if j == lo {
                last = v[..=lo + hi].to_vec();
            }
        },
    )?;
    Ok(last)
}

/// Memoized linearization coefficients for `n, k ≤ max`.
///
/// Built once, then read-only.
#[derive(Clone, Debug)]
pub struct LinearizationTable {
    max: usize,
    // entries[k][j] = coefficients of P_j P_k for j ≤ k
    entries: Vec<Vec<Vec<f64>>>,
}

impl LinearizationTable {
    pub fn build(rec: &ThreeTermRecurrence, max: usize) -> Result<Self> {
        rec.check_degree(2 * max)?;
        let mut entries = Vec::with_capacity(max + 1);
        for k in 0..=max {
            let mut row: Vec<Vec<f64>> = Vec::with_capacity(k + 1);
            reduce_products(
                |j| rec.coefficients(j),
                k,
                k,
                |j, v: &[f64]| {
                    row.push(v[..=j + k].to_vec());
                },
            )?;
            for (j, coeffs) in row.iter().enumerate() {
                to_measure(rec, j, k, coeffs)?;
            }
            entries.push(row);
        }
        Ok(Self { max, entries })
    }

    pub fn max(&self) -> usize {
        self.max
    }

    /// `c(n, k, ·)` if both indices are in range.
    pub fn coefficients(&self, n: usize, k: usize) -> Option<&[f64]> {
        let (lo, hi) = if n <= k { (n, k) } else { (k, n) };
        self.entries.get(hi).map(|row| row[lo].as_slice())
    }
}

/// The polynomial hypergroup on `{0, 1, 2, ..}` induced by a recurrence.
#[derive(Clone, Debug)]
pub struct PolynomialHypergroup {
    rec: ThreeTermRecurrence,
    table: Option<LinearizationTable>,
}

impl PolynomialHypergroup {
    pub fn new(rec: ThreeTermRecurrence) -> Self {
        Self { rec, table: None }
    }

    /// Precomputes all convolutions `δ_n * δ_k` with `n, k ≤ max`.
    pub fn with_table(rec: ThreeTermRecurrence, max: usize) -> Result<Self> {
        let table = LinearizationTable::build(&rec, max)?;
        Ok(Self {
            rec,
            table: Some(table),
        })
    }

    pub fn recurrence(&self) -> &ThreeTermRecurrence {
        &self.rec
    }
}

impl Hypergroup for PolynomialHypergroup {
    type Element = usize;

    fn identity(&self) -> usize {
        0
    }

    fn convolve(&self, n: &usize, k: &usize) -> Result<FiniteMeasure<usize>> {
        match self.table.as_ref().and_then(|t| t.coefficients(*n, *k)) {
            Some(coeffs) => to_measure(&self.rec, *n, *k, coeffs),
            None => linearize(&self.rec, *n, *k),
        }
    }

    fn involution(&self, x: &usize) -> Option<usize> {
        Some(*x)
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// The exponential `m_λ(n) = P_n(λ)`.
#[derive(Clone, Debug)]
pub struct PolyExponential {
    rec: ThreeTermRecurrence,
    lambda: Complex64,
}

impl PolyExponential {
    pub fn new(rec: &ThreeTermRecurrence, lambda: Complex64) -> Self {
        Self {
            rec: rec.clone(),
            lambda,
        }
    }

    pub fn tabulate(&self, n_max: usize) -> Result<Tabulated> {
        Ok(Tabulated::new(self.rec.eval_all(n_max, self.lambda)?))
    }
}

impl HypergroupFn<usize> for PolyExponential {
    fn eval(&self, n: &usize) -> Result<Complex64> {
        self.rec.eval_p(*n, self.lambda)
    }
}

/// The `m_λ`-sine function `n ↦ c·P_n'(λ)`.
#[derive(Clone, Debug)]
pub struct PolySine {
    rec: ThreeTermRecurrence,
    scale: Complex64,
    lambda: Complex64,
}

impl PolySine {
    pub fn tabulate(&self, n_max: usize) -> Result<Tabulated> {
        let values = self.rec.eval_all(n_max, Dual::variable(self.lambda))?;
        Ok(Tabulated::new(
            values.iter().map(|d| d.deriv * self.scale).collect(),
        ))
    }
}

impl HypergroupFn<usize> for PolySine {
    fn eval(&self, n: &usize) -> Result<Complex64> {
        Ok(self.rec.eval_p(*n, Dual::variable(self.lambda))?.deriv * self.scale)
    }
}

/// `n ↦ c·P_n'(λ)`, the general sine function for `m_λ`.
pub fn sine_fn(rec: &ThreeTermRecurrence, c: Complex64, lambda: Complex64) -> PolySine {
    PolySine {
        rec: rec.clone(),
        scale: c,
        lambda,
    }
}

/// Rebuilds an `m_λ`-sine function from `f(0) = 0` and `f(1) = f1` alone.
///
/// Solves `f(n*1) = P_1(λ) f(n) + f(1) P_n(λ)` forward for `f(n+1)`, then
/// requires agreement with `f1·P_n'(λ)/P_1'(λ)` for all `n ≤ n_max` at relative
/// tolerance `tol`. A mismatch is reported as a theorem violation.
pub fn reconstruct_sine(
    rec: &ThreeTermRecurrence,
    lambda: Complex64,
    f1: Complex64,
    n_max: usize,
    tol: f64,
) -> Result<Vec<Complex64>> {
    let (values, report) = reconstruct_sine_report(rec, lambda, f1, n_max)?;
    if report.max_rel > tol {
        return Err(Error::TheoremViolation(format!(
            "reconstructed sine function differs from f(1)·P_n'(λ)/P_1'(λ) at λ = {lambda}: {report}"
        )));
    }
    Ok(values)
}

/// As [`reconstruct_sine`], returning the deviation report instead of failing.
pub fn reconstruct_sine_report(
    rec: &ThreeTermRecurrence,
    lambda: Complex64,
    f1: Complex64,
    n_max: usize,
) -> Result<(Vec<Complex64>, ResidualReport)> {
    let zero = Complex64::new(0.0, 0.0);
    let duals = rec.eval_all(n_max.max(1), Dual::variable(lambda))?;
    let p1 = duals[1].value;
    let mut f = vec![zero; n_max.max(1) + 1];
    f[1] = f1;
    for n in 1..n_max {
        let mu = linearize(rec, n, 1)?;
        let lead = mu.weight(&(n + 1));
        if lead == 0.0 {
            return Err(Error::Singular(format!("c({n},1,{}) vanishes", n + 1)));
        }
        let known: Complex64 = mu
            .support()
            .iter()
            .filter(|(l, _)| *l <= n)
            .map(|(l, w)| f[*l] * *w)
            .sum();
        f[n + 1] = (p1 * f[n] + f1 * duals[n].value - known) / lead;
    }
    f.truncate(n_max + 1);
    // P_1' = 1/a_0, which is 1 for the classical families.
    let scale = f1 / duals[1].deriv;
    let mut acc = ResidualAccumulator::new();
    for (n, v) in f.iter().enumerate() {
        let g = scale * duals[n].deriv;
        acc.record(v - g, g.norm(), || format!("n={n}"));
    }
    Ok((f, acc.finish()?))
}

/// Numerical rank of the columns `n ↦ P_n'(λ)` and `n ↦ P_n'(1) P_n(λ)` over `n ≤ n_max`.
///
/// Rank 2 certifies that the sine function is not a constant multiple of
/// (additive function) × (exponential).
pub fn derivative_product_rank(
    rec: &ThreeTermRecurrence,
    lambda: Complex64,
    n_max: usize,
) -> Result<usize> {
    let at_lambda = rec.eval_all(n_max, Dual::variable(lambda))?;
    let at_one = rec.eval_all(n_max, Dual::variable(Complex64::new(1.0, 0.0)))?;
    let a = DMatrix::from_fn(n_max + 1, 2, |n, col| match col {
        0 => at_lambda[n].deriv,
        _ => at_one[n].deriv * at_lambda[n].value,
    });
    Ok(nullspace(&a).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn p0_is_one_and_normalized_at_one() {
        for rec in [
            ThreeTermRecurrence::chebyshev(),
            ThreeTermRecurrence::legendre(),
        ] {
            assert_eq!(rec.eval_p(0, c(0.3, 0.2)).unwrap(), c(1.0, 0.0));
            for n in 0..30 {
                assert!((rec.eval_p(n, c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn chebyshev_t3_at_half() {
        // cos(3 arccos 0.5) = cos π = -1
        let v = ThreeTermRecurrence::chebyshev()
            .eval_p(3, c(0.5, 0.0))
            .unwrap();
        assert!((v - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn linearize_with_identity() {
        let rec = ThreeTermRecurrence::legendre();
        assert!(linearize(&rec, 7, 0).unwrap().is_point_mass_at(&7));
        assert!(linearize(&rec, 0, 4).unwrap().is_point_mass_at(&4));
    }

    #[test]
    fn chebyshev_product_to_sum() {
        // T_2 T_3 = (T_1 + T_5) / 2
        let m = linearize(&ThreeTermRecurrence::chebyshev(), 2, 3).unwrap();
        assert_eq!(m.len(), 2);
        assert!((m.weight(&1) - 0.5).abs() < 1e-15);
        assert!((m.weight(&5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn legendre_square_of_x() {
        // x² = P_0/3 + 2 P_2/3
        let m = linearize(&ThreeTermRecurrence::legendre(), 1, 1).unwrap();
        assert!((m.weight(&0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((m.weight(&2) - 2.0 / 3.0).abs() < 1e-15);
        let exact = linearize_exact(&ThreeTermRecurrence::legendre(), 1, 1).unwrap();
        assert_eq!(exact[0], BigRational::new(1.into(), 3.into()));
        assert_eq!(exact[1], BigRational::zero());
        assert_eq!(exact[2], BigRational::new(2.into(), 3.into()));
    }

    #[test]
    fn table_matches_direct_linearization() {
        let rec = ThreeTermRecurrence::legendre();
        let hg = PolynomialHypergroup::with_table(rec.clone(), 12).unwrap();
        for n in 0..=12 {
            for k in 0..=12 {
                let a = hg.convolve(&n, &k).unwrap();
                let b = linearize(&rec, n, k).unwrap();
                for (l, w) in b.support() {
                    assert!((a.weight(l) - w).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn chebyshev_derivative_at_one_is_n_squared() {
        let f = sine_fn(&ThreeTermRecurrence::chebyshev(), c(1.0, 0.0), c(1.0, 0.0));
        for n in 0..=10usize {
            assert!((f.eval(&n).unwrap() - c((n * n) as f64, 0.0)).norm() < 1e-11);
        }
    }

    #[test]
    fn zero_scale_gives_zero_function() {
        let f = sine_fn(&ThreeTermRecurrence::legendre(), c(0.0, 0.0), c(0.4, 0.1));
        assert!((0..20usize).all(|n| f.eval(&n).unwrap() == c(0.0, 0.0)));
    }

    #[test]
    fn reconstruct_from_zero_data() {
        let f = reconstruct_sine(
            &ThreeTermRecurrence::chebyshev(),
            c(0.7, 0.0),
            c(0.0, 0.0),
            40,
            1e-9,
        )
        .unwrap();
        assert!(f.iter().all(|v| *v == c(0.0, 0.0)));
    }

    #[test]
    fn reconstruct_legendre_at_one() {
        let f = reconstruct_sine(
            &ThreeTermRecurrence::legendre(),
            c(1.0, 0.0),
            c(1.0, 0.0),
            64,
            1e-9,
        )
        .unwrap();
        for (n, v) in f.iter().enumerate() {
            let want = (n * (n + 1)) as f64 / 2.0;
            assert!(
                (v - want).norm() <= 1e-9 * (1.0 + want),
                "n={n}: {v} vs {want}"
            );
        }
    }

    #[test]
    fn table_recurrence_validation_and_range() {
        // Chebyshev written out as a table.
        let a = vec![1.0, 0.5, 0.5, 0.5];
        let b = vec![0.0; 4];
        let cc = vec![0.0, 0.5, 0.5, 0.5];
        let rec = ThreeTermRecurrence::from_tables("cheb4", a, b, cc).unwrap();
        assert_eq!(rec.max_degree(), Some(4));
        let v = rec.eval_p(3, c(0.5, 0.0)).unwrap();
        assert!((v + 1.0).norm() < 1e-15);
        assert!(matches!(
            rec.eval_p(5, c(0.5, 0.0)),
            Err(Error::DegreeOutOfRange { .. })
        ));
        assert!(ThreeTermRecurrence::from_tables("bad", vec![0.5], vec![0.0], vec![0.0]).is_err());
    }

    #[test]
    fn negative_linearization_is_rejected() {
        // Normalized, but with a negative linearization coefficient.
        let rec = ThreeTermRecurrence::from_tables(
            "signed",
            vec![1.0, 0.1, 0.1, 0.1],
            vec![0.0, -0.8, 0.0, 0.0],
            vec![0.0, 1.7, 0.9, 0.9],
        )
        .unwrap();
        // P_1² = x P_1 = 0.1 P_2 - 0.8 P_1 + 1.7 P_0
        assert!(matches!(
            linearize(&rec, 1, 1),
            Err(Error::NotAHypergroup(_))
        ));
    }

    #[test]
    fn file_round_trip_with_closed_form() {
        let file = ThreeTermRecurrence::legendre().to_file(8).unwrap();
        let text = serde_json::to_string(&file).unwrap();
        let rec = ThreeTermRecurrence::from_json(&text).unwrap();
        assert_eq!(rec.max_degree(), None);
        let mut bad = file.clone();
        bad.a[3] = 0.4;
        assert!(ThreeTermRecurrence::from_file(bad).is_err());
    }
}
