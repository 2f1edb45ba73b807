//! Finitely supported probability measures.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hypergroup::HypergroupFn;

/// Weight tolerance used when hypergroups build their convolution measures.
pub const CONSTRUCTION_TOL: f64 = 1e-12;

/// Label of a hypergroup element.
pub trait Element: Clone + PartialEq + fmt::Debug {}

impl<T: Clone + PartialEq + fmt::Debug> Element for T {}

/// A probability measure with finite support.
///
/// Support entries are unique; weights are nonnegative up to `tol` and sum
/// to one up to `tol`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMeasure<E> {
    support: Vec<(E, f64)>,
    tol: f64,
}

impl<E: Element> FiniteMeasure<E> {
    /// The point mass `δ_x`.
    pub fn point(x: E) -> Self {
        Self {
            support: vec![(x, 1.0)],
            tol: CONSTRUCTION_TOL,
        }
    }

    /// Builds a measure from weighted atoms, merging repeated elements.
    pub fn from_weights<I>(atoms: I, tol: f64) -> Result<Self>
    where
        I: IntoIterator<Item = (E, f64)>,
    {
        let mut support: Vec<(E, f64)> = Vec::new();
        for (e, w) in atoms {
            if !w.is_finite() {
                return Err(Error::InvalidMeasure(format!("weight {w} at {e:?}")));
            }
            match support.iter_mut().find(|(s, _)| *s == e) {
                Some((_, acc)) => *acc += w,
                None => support.push((e, w)),
            }
        }
        let m = Self { support, tol };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        if self.support.is_empty() {
            return Err(Error::InvalidMeasure("empty support".into()));
        }
        if let Some((e, w)) = self.support.iter().find(|(_, w)| *w < -self.tol) {
            return Err(Error::InvalidMeasure(format!(
                "negative weight {w} at {e:?}"
            )));
        }
        let total = self.total_weight();
        if (total - 1.0).abs() > self.tol {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {total}, expected 1 within {}",
                self.tol
            )));
        }
        Ok(())
    }

    pub fn support(&self) -> &[(E, f64)] {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn total_weight(&self) -> f64 {
        self.support.iter().map(|(_, w)| w).sum()
    }

    /// Weight assigned to `x`, zero if `x` is not in the support.
    pub fn weight(&self, x: &E) -> f64 {
        self.support
            .iter()
            .find(|(e, _)| e == x)
            .map_or(0.0, |(_, w)| *w)
    }

    pub fn is_point_mass_at(&self, x: &E) -> bool {
        self.support.len() == 1 && self.support[0].0 == *x && self.support[0].1 == 1.0
    }

    /// `∫ f dμ = Σ wᵢ f(xᵢ)`.
    pub fn integrate<F: HypergroupFn<E> + ?Sized>(&self, f: &F) -> Result<Complex64> {
        self.support
            .iter()
            .try_fold(Complex64::new(0.0, 0.0), |acc, (e, w)| {
                Ok(acc + f.eval(e)? * *w)
            })
    }

    /// Convex combination `Σ αⱼ μⱼ`, merging atoms.
    pub fn mixture<'a, I>(parts: I, tol: f64) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, &'a FiniteMeasure<E>)>,
        E: 'a,
    {
        let atoms = parts
            .into_iter()
            .flat_map(|(a, m)| m.support.iter().map(move |(e, w)| (e.clone(), a * w)));
        Self::from_weights(atoms, tol)
    }

    /// Same measure with atoms below `threshold` dropped and the rest kept as is.
    pub fn pruned(&self, threshold: f64) -> Self {
        let support: Vec<_> = self
            .support
            .iter()
            .filter(|(_, w)| w.abs() > threshold)
            .cloned()
            .collect();
        Self {
            support,
            tol: self.tol,
        }
    }
}
