//! Polynomial hypergroups in several variables, realized as products of
//! one-variable polynomial hypergroups.
//!
//! Elements are multi-indices `x = (x_1, .., x_d)` with
//! `Q_x(λ) = Π_j P^{(j)}_{x_j}(λ_j)`, and the convolution is the product of
//! the per-factor linearization measures. The `m_λ`-sine functions are the
//! combinations `Σ_j c_j ∂_j Q_x(λ)`.

use std::collections::HashMap;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::hypergroup::{Hypergroup, HypergroupFn};
use crate::measure::FiniteMeasure;
use crate::poly::{PolynomialHypergroup, ThreeTermRecurrence, LINEARIZATION_TOL};
use crate::residual::{ResidualAccumulator, ResidualReport};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn zero(d: usize) -> Self {
        Self(vec![0; d])
    }

    /// The unit element `e_j`.
    pub fn unit(d: usize, j: usize) -> Self {
        let mut v = vec![0; d];
        v[j] = 1;
        Self(v)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

/// All multi-indices of dimension `d` with total degree at most `n`, by increasing degree.
pub fn elements_up_to_degree(d: usize, n: usize) -> Vec<MultiIndex> {
    fn fill(prefix: &mut Vec<usize>, d: usize, remaining: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == d {
            out.push(prefix.clone());
            return;
        }
        for v in 0..=remaining {
            prefix.push(v);
            fill(prefix, d, remaining - v, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    fill(&mut Vec::with_capacity(d), d, n, &mut all);
    let mut out: Vec<MultiIndex> = all.into_iter().map(MultiIndex).collect();
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    out
}

/// Elements whose coordinates are all at most `max`.
pub fn elements_in_box(d: usize, max: usize) -> Vec<MultiIndex> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=max).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(MultiIndex).collect()
}

#[derive(Clone, Debug)]
pub struct ProductPolyHypergroup {
    factors: Vec<PolynomialHypergroup>,
}

impl ProductPolyHypergroup {
    pub fn new(factors: Vec<ThreeTermRecurrence>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::arg("product hypergroup needs at least one factor"));
        }
        Ok(Self {
            factors: factors.into_iter().map(PolynomialHypergroup::new).collect(),
        })
    }

    /// As [`ProductPolyHypergroup::new`], with linearization tables up to `max` per factor.
    pub fn with_tables(factors: Vec<ThreeTermRecurrence>, max: usize) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::arg("product hypergroup needs at least one factor"));
        }
        let factors = factors
            .into_iter()
            .map(|r| PolynomialHypergroup::with_table(r, max))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { factors })
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    fn check_dim(&self, what: &str, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::arg(format!(
                "{what} has dimension {len}, hypergroup has dimension {}",
                self.dim()
            )));
        }
        Ok(())
    }

    /// `(P^{(j)}_{x_j}(λ_j), P^{(j)'}_{x_j}(λ_j))` per coordinate.
    fn factor_values(&self, x: &MultiIndex, lambda: &[Complex64]) -> Result<Vec<Dual>> {
        self.check_dim("element", x.dim())?;
        self.check_dim("parameter", lambda.len())?;
        self.factors
            .iter()
            .zip(&x.0)
            .zip(lambda)
            .map(|((hg, n), l)| hg.recurrence().eval_p(*n, Dual::variable(*l)))
            .collect()
    }

    /// `Q_x(λ)`.
    pub fn q_eval(&self, x: &MultiIndex, lambda: &[Complex64]) -> Result<Complex64> {
        Ok(self
            .factor_values(x, lambda)?
            .iter()
            .map(|d| d.value)
            .product())
    }

    /// `(∂_1 Q_x(λ), .., ∂_d Q_x(λ))`.
    pub fn q_grad(&self, x: &MultiIndex, lambda: &[Complex64]) -> Result<Vec<Complex64>> {
        let vals = self.factor_values(x, lambda)?;
        Ok((0..vals.len())
            .map(|j| {
                vals.iter()
                    .enumerate()
                    .map(|(i, d)| if i == j { d.deriv } else { d.value })
                    .product()
            })
            .collect())
    }
}

impl Hypergroup for ProductPolyHypergroup {
    type Element = MultiIndex;

    fn identity(&self) -> MultiIndex {
        MultiIndex::zero(self.dim())
    }

    fn convolve(&self, x: &MultiIndex, y: &MultiIndex) -> Result<FiniteMeasure<MultiIndex>> {
        self.check_dim("element", x.dim())?;
        self.check_dim("element", y.dim())?;
        let mut atoms: Vec<(Vec<usize>, f64)> = vec![(Vec::with_capacity(self.dim()), 1.0)];
        for (j, hg) in self.factors.iter().enumerate() {
            let m = hg.convolve(&x.0[j], &y.0[j])?;
            atoms = atoms
                .into_iter()
                .flat_map(|(prefix, w)| {
                    m.support().iter().map(move |(l, v)| {
                        let mut p = prefix.clone();
                        p.push(*l);
                        (p, w * v)
                    })
                })
                .collect();
        }
        FiniteMeasure::from_weights(
            atoms.into_iter().map(|(p, w)| (MultiIndex(p), w)),
            LINEARIZATION_TOL,
        )
    }

    fn involution(&self, x: &MultiIndex) -> Option<MultiIndex> {
        Some(x.clone())
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// The exponential `x ↦ Q_x(λ)`.
#[derive(Clone, Debug)]
pub struct MultiExponential<'a> {
    hg: &'a ProductPolyHypergroup,
    lambda: Vec<Complex64>,
}

impl<'a> MultiExponential<'a> {
    pub fn new(hg: &'a ProductPolyHypergroup, lambda: &[Complex64]) -> Result<Self> {
        hg.check_dim("parameter", lambda.len())?;
        Ok(Self {
            hg,
            lambda: lambda.to_vec(),
        })
    }
}

impl HypergroupFn<MultiIndex> for MultiExponential<'_> {
    fn eval(&self, x: &MultiIndex) -> Result<Complex64> {
        self.hg.q_eval(x, &self.lambda)
    }
}

/// The sine function `x ↦ Σ_j c_j ∂_j Q_x(λ)`.
#[derive(Clone, Debug)]
pub struct MultiSine<'a> {
    hg: &'a ProductPolyHypergroup,
    coefficients: Vec<Complex64>,
    lambda: Vec<Complex64>,
}

impl MultiSine<'_> {
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }
}

impl HypergroupFn<MultiIndex> for MultiSine<'_> {
    fn eval(&self, x: &MultiIndex) -> Result<Complex64> {
        let grad = self.hg.q_grad(x, &self.lambda)?;
        Ok(grad
            .iter()
            .zip(&self.coefficients)
            .map(|(g, c)| g * c)
            .sum())
    }
}

pub fn multi_sine<'a>(
    hg: &'a ProductPolyHypergroup,
    coefficients: &[Complex64],
    lambda: &[Complex64],
) -> Result<MultiSine<'a>> {
    hg.check_dim("coefficient vector", coefficients.len())?;
    hg.check_dim("parameter", lambda.len())?;
    Ok(MultiSine {
        hg,
        coefficients: coefficients.to_vec(),
        lambda: lambda.to_vec(),
    })
}

/// Coefficients recovered from a sine function, with the check over all
/// elements of degree at most `n_max`.
#[derive(Clone, Debug)]
pub struct CoefficientFit {
    pub coefficients: Vec<Complex64>,
    pub report: ResidualReport,
}

/// Solves `f(e_j) = Σ_i c_i ∂_i Q_{e_j}(λ)` for `c`, then checks
/// `f(x) = Σ_i c_i ∂_i Q_x(λ)` degree by degree up to `n_max`.
///
/// A numerically singular system is reported as [`Error::Singular`].
pub fn fit_coefficients<F>(
    hg: &ProductPolyHypergroup,
    f: &F,
    lambda: &[Complex64],
    n_max: usize,
) -> Result<CoefficientFit>
where
    F: HypergroupFn<MultiIndex> + ?Sized,
{
    let d = hg.dim();
    hg.check_dim("parameter", lambda.len())?;
    let units: Vec<MultiIndex> = (0..d).map(|j| MultiIndex::unit(d, j)).collect();
    let grads = units
        .iter()
        .map(|e| hg.q_grad(e, lambda))
        .collect::<Result<Vec<_>>>()?;
    let matrix = DMatrix::from_fn(d, d, |j, i| grads[j][i]);
    let rhs = DVector::from_iterator(
        d,
        units
            .iter()
            .map(|e| f.eval(e))
            .collect::<Result<Vec<_>>>()?,
    );

    let sv = matrix.clone().singular_values();
    let largest = sv.iter().cloned().fold(0.0_f64, f64::max);
    let smallest = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(smallest > d as f64 * f64::EPSILON * largest) {
        return Err(Error::Singular(format!(
            "gradients of the degree-one exponentials are dependent at λ = {lambda:?} (σ_min = {smallest:e})"
        )));
    }
    let solution = matrix
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Singular(format!("LU solve failed at λ = {lambda:?}")))?;
    let coefficients: Vec<Complex64> = solution.iter().copied().collect();

    let model = multi_sine(hg, &coefficients, lambda)?;
    let mut acc = ResidualAccumulator::new();
    for x in elements_up_to_degree(d, n_max) {
        let want = model.eval(&x)?;
        acc.record(f.eval(&x)? - want, want.norm(), || format!("{x:?}"));
    }
    Ok(CoefficientFit {
        coefficients,
        report: acc.finish()?,
    })
}

/// Builds the `m_λ`-sine function with prescribed values on the unit
/// elements from the sine equation alone, one degree at a time.
///
/// For `x = y + e_j`, the equation at `(y, e_j)` involves only `f(x)` and
/// values of lower degree, with `f(x)` weighted by the positive
/// linearization coefficient `c(y_j, 1, y_j + 1)`.
pub fn reconstruct_multi_sine(
    hg: &ProductPolyHypergroup,
    lambda: &[Complex64],
    unit_values: &[Complex64],
    n_max: usize,
) -> Result<Vec<(MultiIndex, Complex64)>> {
    let d = hg.dim();
    hg.check_dim("unit value vector", unit_values.len())?;
    let m = MultiExponential::new(hg, lambda)?;
    let mut values: HashMap<MultiIndex, Complex64> = HashMap::new();
    let order = elements_up_to_degree(d, n_max);
    for x in &order {
        let v = match x.degree() {
            0 => Complex64::new(0.0, 0.0),
            1 => unit_values[x.0.iter().position(|v| *v == 1).expect("unit")],
            _ => {
                let j = x.0.iter().position(|v| *v > 0).expect("positive degree");
                let mut y = x.clone();
                y.0[j] -= 1;
                let e = MultiIndex::unit(d, j);
                let mu = hg.convolve(&y, &e)?;
                let rhs = values[&y] * m.eval(&e)? + values[&e] * m.eval(&y)?;
                let mut lead = 0.0;
                let mut known = Complex64::new(0.0, 0.0);
                for (z, w) in mu.support() {
                    if z == x {
                        lead = *w;
                    } else {
                        let fz = values.get(z).ok_or_else(|| Error::Evaluation {
                            element: format!("{z:?}"),
                        })?;
                        known += fz * *w;
                    }
                }
                if lead == 0.0 {
                    return Err(Error::Singular(format!(
                        "{x:?} does not occur in {y:?} * {e:?}"
                    )));
                }
                (rhs - known) / lead
            }
        };
        values.insert(x.clone(), v);
    }
    Ok(order
        .into_iter()
        .map(|x| {
            let v = values[&x];
            (x, v)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cheb2() -> ProductPolyHypergroup {
        ProductPolyHypergroup::new(vec![
            ThreeTermRecurrence::chebyshev(),
            ThreeTermRecurrence::chebyshev(),
        ])
        .unwrap()
    }

    #[test]
    fn normalization_at_one() {
        let hg = cheb2();
        let one = [c(1.0, 0.0), c(1.0, 0.0)];
        for x in elements_in_box(2, 6) {
            assert!((hg.q_eval(&x, &one).unwrap() - 1.0).norm() < 1e-13);
        }
    }

    #[test]
    fn chebyshev_product_value() {
        // T_2(0.5) T_1(0.5) = (-0.5)(0.5)
        let v = cheb2()
            .q_eval(&MultiIndex(vec![2, 1]), &[c(0.5, 0.0), c(0.5, 0.0)])
            .unwrap();
        assert!((v - c(-0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn gradient_at_one() {
        let hg = cheb2();
        for (n, m) in [(0, 0), (3, 2), (5, 7)] {
            let g = hg
                .q_grad(&MultiIndex(vec![n, m]), &[c(1.0, 0.0), c(1.0, 0.0)])
                .unwrap();
            assert!((g[0] - (n * n) as f64).norm() < 1e-10);
            assert!((g[1] - (m * m) as f64).norm() < 1e-10);
        }
    }

    #[test]
    fn dimension_mismatch_is_an_argument_error() {
        let hg = cheb2();
        assert!(matches!(
            hg.q_eval(&MultiIndex(vec![1]), &[c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            hg.q_grad(&MultiIndex(vec![1, 1]), &[c(1.0, 0.0)]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(multi_sine(&hg, &[c(1.0, 0.0)], &[c(1.0, 0.0), c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn convolution_is_product_measure() {
        let hg = cheb2();
        let m = hg
            .convolve(&MultiIndex(vec![1, 2]), &MultiIndex(vec![1, 3]))
            .unwrap();
        // (½δ_0 + ½δ_2) ⊗ (½δ_1 + ½δ_5)
        assert_eq!(m.len(), 4);
        assert!((m.weight(&MultiIndex(vec![2, 5])) - 0.25).abs() < 1e-15);
        assert!(hg
            .convolve(&MultiIndex(vec![3, 4]), &hg.identity())
            .unwrap()
            .is_point_mass_at(&MultiIndex(vec![3, 4])));
    }

    #[test]
    fn first_coordinate_sine_is_n_squared() {
        let hg = cheb2();
        let f = multi_sine(
            &hg,
            &[c(1.0, 0.0), c(0.0, 0.0)],
            &[c(1.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap();
        for x in elements_in_box(2, 5) {
            assert!((f.eval(&x).unwrap() - (x.0[0] * x.0[0]) as f64).norm() < 1e-10);
        }
    }

    #[test]
    fn second_partial_vanishes_on_first_axis() {
        let hg = cheb2();
        for n in 0..8 {
            let g = hg
                .q_grad(&MultiIndex(vec![n, 0]), &[c(0.7, 0.1), c(0.3, 0.0)])
                .unwrap();
            assert_eq!(g[1], c(0.0, 0.0));
        }
    }

    #[test]
    fn fit_recovers_coefficients() {
        let hg = cheb2();
        let lambda = [c(0.7, 0.0), c(0.3, 0.0)];
        let f = multi_sine(&hg, &[c(3.0, 0.0), c(-1.0, 0.0)], &lambda).unwrap();
        let fit = fit_coefficients(&hg, &f, &lambda, 6).unwrap();
        assert!((fit.coefficients[0] - 3.0).norm() < 1e-10);
        assert!((fit.coefficients[1] + 1.0).norm() < 1e-10);
        assert!(fit.report.max_rel < 1e-12);
    }

    #[test]
    fn fit_of_zero_function() {
        let hg = cheb2();
        let zero = |_: &MultiIndex| c(0.0, 0.0);
        let fit = fit_coefficients(&hg, &zero, &[c(0.2, 0.0), c(-0.4, 0.0)], 4).unwrap();
        assert!(fit.coefficients.iter().all(|v| *v == c(0.0, 0.0)));
    }

    #[test]
    fn degree_enumeration() {
        let xs = elements_up_to_degree(3, 2);
        assert_eq!(xs.len(), 10);
        assert_eq!(xs[0], MultiIndex::zero(3));
        assert!(xs.windows(2).all(|w| w[0].degree() <= w[1].degree()));
        assert_eq!(elements_in_box(2, 3).len(), 16);
    }
}
