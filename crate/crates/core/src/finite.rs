//! Finite hypergroups given by a structure tensor, and the linear-algebra
//! solver for their sine functions.

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergroup::{Hypergroup, Tabulated};
use crate::measure::{FiniteMeasure, CONSTRUCTION_TOL};
use crate::residual::{all_pairs, exp_residual, sine_residual};

/// `δ_i * δ_j = Σ_l tensor[i][j][l] δ_l` on `{0, .., size-1}`, with 0 the identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteHypergroupSpec {
    pub size: usize,
    pub tensor: Vec<Vec<Vec<f64>>>,
    #[serde(default)]
    pub name: String,
}

impl FiniteHypergroupSpec {
    pub fn new(name: impl Into<String>, tensor: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let spec = Self {
            size: tensor.len(),
            tensor,
            name: name.into(),
        };
        spec.validate(CONSTRUCTION_TOL)?;
        Ok(spec)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate(CONSTRUCTION_TOL)?;
        Ok(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Checks shape, nonnegativity, unit row sums and the identity law.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let n = self.size;
        if n == 0 {
            return Err(Error::NotAHypergroup("empty hypergroup".into()));
        }
        let shape_ok = self.tensor.len() == n
            && self
                .tensor
                .iter()
                .all(|row| row.len() == n && row.iter().all(|c| c.len() == n));
        if !shape_ok {
            return Err(Error::NotAHypergroup(format!("tensor is not {n}×{n}×{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                let c = &self.tensor[i][j];
                if let Some((l, w)) = c.iter().enumerate().find(|(_, w)| !(**w >= -tol)) {
                    return Err(Error::NotAHypergroup(format!(
                        "c[{i}][{j}][{l}] = {w} is negative"
                    )));
                }
                let sum: f64 = c.iter().sum();
                if (sum - 1.0).abs() > tol {
                    return Err(Error::NotAHypergroup(format!(
                        "Σ_l c[{i}][{j}][l] = {sum}, expected 1"
                    )));
                }
            }
            for l in 0..n {
                let want = if l == i { 1.0 } else { 0.0 };
                if (self.tensor[0][i][l] - want).abs() > tol
                    || (self.tensor[i][0][l] - want).abs() > tol
                {
                    return Err(Error::NotAHypergroup(format!(
                        "element 0 does not act as identity on {i}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.size).collect()
    }

    /// The two-point hypergroup `D(θ)`: `δ_1 * δ_1 = θ δ_0 + (1-θ) δ_1`.
    pub fn d_theta(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::arg(format!("D(θ) needs 0 < θ < 1, got {theta}")));
        }
        Self::new(
            format!("D({theta})"),
            vec![
                vec![vec![1.0, 0.0], vec![0.0, 1.0]],
                vec![vec![0.0, 1.0], vec![theta, 1.0 - theta]],
            ],
        )
    }

    /// The cyclic group `Z_n` as a hypergroup of point masses.
    pub fn cyclic(n: usize) -> Result<Self> {
        let mut t = vec![vec![vec![0.0; n]; n]; n];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                c[(i + j) % n] = 1.0;
            }
        }
        Self::new(format!("Z_{n}"), t)
    }

    /// Conjugacy classes of `S_3`: identity, transpositions, 3-cycles.
    pub fn s3_classes() -> Result<Self> {
        Self::new(
            "S3 classes",
            vec![
                vec![
                    vec![1.0, 0.0, 0.0],
                    vec![0.0, 1.0, 0.0],
                    vec![0.0, 0.0, 1.0],
                ],
                vec![
                    vec![0.0, 1.0, 0.0],
                    vec![1.0 / 3.0, 0.0, 2.0 / 3.0],
                    vec![0.0, 1.0, 0.0],
                ],
                vec![
                    vec![0.0, 0.0, 1.0],
                    vec![0.0, 1.0, 0.0],
                    vec![0.5, 0.0, 0.5],
                ],
            ],
        )
    }

    /// Orbits of `Z_4` under `x ↦ -x`: `{0}, {±1}, {2}`.
    pub fn z4_orbits() -> Result<Self> {
        Self::new(
            "Z4/±",
            vec![
                vec![
                    vec![1.0, 0.0, 0.0],
                    vec![0.0, 1.0, 0.0],
                    vec![0.0, 0.0, 1.0],
                ],
                vec![
                    vec![0.0, 1.0, 0.0],
                    vec![0.5, 0.0, 0.5],
                    vec![0.0, 1.0, 0.0],
                ],
                vec![
                    vec![0.0, 0.0, 1.0],
                    vec![0.0, 1.0, 0.0],
                    vec![1.0, 0.0, 0.0],
                ],
            ],
        )
    }

    /// The exponentials of `D(θ)`: `m_0 ≡ 1` and `m_1 = (1, -θ)`.
    pub fn d_theta_exponentials(theta: f64) -> [Vec<Complex64>; 2] {
        [
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(-theta, 0.0)],
        ]
    }

    /// Linear map `f ↦ (f(i*j) - m(j) f(i) - m(i) f(j))_{i,j}` as an `N² × N` matrix.
    pub fn sine_system(&self, m: &[Complex64]) -> DMatrix<Complex64> {
        let n = self.size;
        let mut a = DMatrix::<Complex64>::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                let row = i * n + j;
                for l in 0..n {
                    a[(row, l)] += Complex64::new(self.tensor[i][j][l], 0.0);
                }
                a[(row, i)] -= m[j];
                a[(row, j)] -= m[i];
            }
        }
        a
    }
}

impl Hypergroup for FiniteHypergroupSpec {
    type Element = usize;

    fn identity(&self) -> usize {
        0
    }

    fn convolve(&self, x: &usize, y: &usize) -> Result<FiniteMeasure<usize>> {
        if *x >= self.size || *y >= self.size {
            return Err(Error::arg(format!(
                "element ({x}, {y}) outside hypergroup of size {}",
                self.size
            )));
        }
        let atoms = self.tensor[*x][*y]
            .iter()
            .enumerate()
            .filter(|(_, w)| **w != 0.0)
            .map(|(l, w)| (l, *w));
        FiniteMeasure::from_weights(atoms, CONSTRUCTION_TOL)
    }

    fn is_commutative(&self) -> bool {
        (0..self.size).all(|i| (0..self.size).all(|j| self.tensor[i][j] == self.tensor[j][i]))
    }
}

/// Numerical rank and an orthonormal nullspace basis of `a`.
///
/// Singular values at or below `max(rows, cols) · ε · σ_max` count as zero.
pub fn nullspace(a: &DMatrix<Complex64>) -> (usize, Vec<DVector<Complex64>>) {
    let (rows, cols) = a.shape();
    // Thin SVD only yields a full V when rows >= cols.
    let padded = if rows < cols {
        let mut p = DMatrix::<Complex64>::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^H");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let cutoff = rows.max(cols) as f64 * f64::EPSILON * sigma_max;
    let mut basis = Vec::new();
    let mut rank = 0;
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s > cutoff {
            rank += 1;
        } else {
            basis.push(v_t.row(k).transpose().map(|z| z.conj()));
        }
    }
    (rank, basis)
}

/// Basis of the `m`-sine functions on a finite hypergroup.
///
/// `m` must be an exponential up to `tol` (relative residual); every
/// returned basis function passes the sine equation at `tol`.
pub fn sine_space(
    spec: &FiniteHypergroupSpec,
    m: &[Complex64],
    tol: f64,
) -> Result<Vec<Tabulated>> {
    if m.len() != spec.size {
        return Err(Error::arg(format!(
            "exponential has {} values, hypergroup has {} elements",
            m.len(),
            spec.size
        )));
    }
    let pairs = all_pairs(&spec.elements());
    let m_fn = Tabulated::new(m.to_vec());
    let exp = exp_residual(spec, &m_fn, &pairs)?;
    if exp.max_rel > tol {
        return Err(Error::arg(format!("m is not an exponential: {exp}")));
    }
    let (_, null) = nullspace(&spec.sine_system(m));
    let basis: Vec<Tabulated> = null
        .into_iter()
        .map(|v| Tabulated::new(v.iter().copied().collect()))
        .collect();
    for f in &basis {
        let r = sine_residual(spec, f, &m_fn, &pairs)?;
        if r.max_rel > tol {
            return Err(Error::TheoremViolation(format!(
                "computed sine basis element fails the sine equation: {r}"
            )));
        }
    }
    Ok(basis)
}

/// True iff `|f(y) m(y)| ≤ tol` for every basis function and every element.
pub fn compact_vanishing_check(
    spec: &FiniteHypergroupSpec,
    m: &[Complex64],
    sine_basis: &[Tabulated],
    tol: f64,
) -> bool {
    sine_basis.iter().all(|f| {
        (0..spec.size).all(|y| match (f.values().get(y), m.get(y)) {
            (Some(fy), Some(my)) => (fy * my).norm() <= tol,
            _ => false,
        })
    })
}

/// Exponentials of a finite commutative hypergroup.
///
/// An exponential is a common eigenvector of the translation matrices
/// `(C_i)_{jl} = c[i][j][l]` normalized by `m(0) = 1`; candidates come from
/// a generic combination of the `C_i` and are kept if they pass the
/// exponential equation at `tol`.
pub fn find_exponentials(spec: &FiniteHypergroupSpec, tol: f64) -> Result<Vec<Vec<Complex64>>> {
    let n = spec.size;
    let mut combo = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let weight = ((i as f64 + 1.0) * 0.618_033_988_749_895).fract() + 0.5;
        for j in 0..n {
            for l in 0..n {
                combo[(j, l)] += weight * spec.tensor[i][j][l];
            }
        }
    }
    let eigenvalues = combo.clone().complex_eigenvalues();
    let c = combo.map(|x| Complex64::new(x, 0.0));
    let pairs = all_pairs(&spec.elements());
    let mut found: Vec<Vec<Complex64>> = Vec::new();
    for mu in eigenvalues.iter() {
        let shifted = &c - DMatrix::<Complex64>::identity(n, n) * *mu;
        // Eigenvectors are exact nullvectors only up to rounding, so take the
        // right singular vector of the smallest singular value.
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.expect("requested V^H");
        let (k, _) =
            svd.singular_values
                .iter()
                .enumerate()
                .fold(
                    (0, f64::INFINITY),
                    |best, (k, s)| if *s < best.1 { (k, *s) } else { best },
                );
        let v: Vec<Complex64> = v_t.row(k).iter().map(|z| z.conj()).collect();
        if v[0].norm() < 1e-12 {
            continue;
        }
        let m: Vec<Complex64> = v.iter().map(|z| z / v[0]).collect();
        let r = exp_residual(spec, &Tabulated::new(m.clone()), &pairs)?;
        if r.max_rel > tol {
            continue;
        }
        let duplicate = found
            .iter()
            .any(|g| g.iter().zip(&m).all(|(a, b)| (a - b).norm() <= tol));
        if !duplicate {
            found.push(m);
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergroup::convolve_power;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn d_theta_square_of_generator() {
        let d = FiniteHypergroupSpec::d_theta(0.5).unwrap();
        let p = convolve_power(&d, &1, 2).unwrap();
        assert_eq!(p.weight(&0), 0.5);
        assert_eq!(p.weight(&1), 0.5);
    }

    #[test]
    fn identity_power_is_identity() {
        let d = FiniteHypergroupSpec::d_theta(0.3).unwrap();
        assert!(convolve_power(&d, &0, 5).unwrap().is_point_mass_at(&0));
    }

    #[test]
    fn rejects_bad_tensors() {
        let bad_sum = vec![
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![vec![0.0, 1.0], vec![0.5, 0.6]],
        ];
        assert!(FiniteHypergroupSpec::new("x", bad_sum).is_err());
        let bad_identity = vec![
            vec![vec![0.0, 1.0], vec![0.0, 1.0]],
            vec![vec![0.0, 1.0], vec![0.5, 0.5]],
        ];
        assert!(FiniteHypergroupSpec::new("x", bad_identity).is_err());
        assert!(FiniteHypergroupSpec::d_theta(1.0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = FiniteHypergroupSpec::s3_classes().unwrap();
        let back = FiniteHypergroupSpec::from_json(&d.to_json().unwrap()).unwrap();
        assert_eq!(d, back);
        let text =
            r#"{"size": 2, "tensor": [[[1,0],[0,1]],[[0,1],[0.25,0.75]]], "name": "D(0.25)"}"#;
        let parsed = FiniteHypergroupSpec::from_json(text).unwrap();
        assert_eq!(parsed, FiniteHypergroupSpec::d_theta(0.25).unwrap());
    }

    #[test]
    fn d_theta_sine_spaces_are_trivial() {
        let d = FiniteHypergroupSpec::d_theta(0.25).unwrap();
        for m in FiniteHypergroupSpec::d_theta_exponentials(0.25) {
            assert!(sine_space(&d, &m, 1e-9).unwrap().is_empty());
        }
    }

    #[test]
    fn sine_space_rejects_non_exponential() {
        let d = FiniteHypergroupSpec::d_theta(0.25).unwrap();
        assert!(sine_space(&d, &[re(1.0), re(0.5)], 1e-9).is_err());
    }

    #[test]
    fn nullspace_of_rank_deficient_matrix() {
        let a = DMatrix::from_row_slice(
            3,
            3,
            &[
                re(1.0),
                re(2.0),
                re(3.0),
                re(2.0),
                re(4.0),
                re(6.0),
                re(1.0),
                re(0.0),
                re(1.0),
            ],
        );
        let (rank, basis) = nullspace(&a);
        assert_eq!(rank, 2);
        assert_eq!(basis.len(), 1);
        assert!((&a * &basis[0]).norm() < 1e-12);
    }

    #[test]
    fn finds_all_exponentials_of_small_hypergroups() {
        let d = FiniteHypergroupSpec::d_theta(0.4).unwrap();
        let mut e = find_exponentials(&d, 1e-9).unwrap();
        e.sort_by(|a, b| b[1].re.partial_cmp(&a[1].re).unwrap());
        assert_eq!(e.len(), 2);
        assert!((e[0][1] - re(1.0)).norm() < 1e-12);
        assert!((e[1][1] - re(-0.4)).norm() < 1e-12);

        assert_eq!(
            find_exponentials(&FiniteHypergroupSpec::s3_classes().unwrap(), 1e-9)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            find_exponentials(&FiniteHypergroupSpec::cyclic(3).unwrap(), 1e-9)
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn commutativity_flag() {
        assert!(FiniteHypergroupSpec::s3_classes().unwrap().is_commutative());
        assert!(FiniteHypergroupSpec::d_theta(0.5).unwrap().is_commutative());
    }
}
