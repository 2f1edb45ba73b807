//! Independent reference computations checked against the library paths.

use hypersine::finite::{find_exponentials, nullspace, sine_space, FiniteHypergroupSpec};
use hypersine::poly::{linearize, linearize_exact, ThreeTermRecurrence};
use hypersine::su2::{su2_convolve, su2_dphi, su2_phi};
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Rank by Gaussian elimination with complete pivoting.
fn elimination_rank(a: &DMatrix<Complex64>, rel_tol: f64) -> usize {
    let mut m = a.clone();
    let (rows, cols) = m.shape();
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let mut rank = 0;
    for _ in 0..rows.min(cols) {
        let mut best = (rank, rank, 0.0);
        for i in rank..rows {
            for j in rank..cols {
                let v = m[(i, j)].norm();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= rel_tol * scale {
            break;
        }
        m.swap_rows(rank, best.0);
        m.swap_columns(rank, best.1);
        let pivot = m[(rank, rank)];
        for i in rank + 1..rows {
            let factor = m[(i, rank)] / pivot;
            for j in rank..cols {
                let t = m[(rank, j)];
                m[(i, j)] -= factor * t;
            }
        }
        rank += 1;
    }
    rank
}

fn supplied_specs() -> Vec<FiniteHypergroupSpec> {
    let mut specs: Vec<FiniteHypergroupSpec> = [0.1, 0.25, 0.5, 0.9]
        .iter()
        .map(|t| FiniteHypergroupSpec::d_theta(*t).unwrap())
        .collect();
    specs.push(FiniteHypergroupSpec::s3_classes().unwrap());
    specs.push(FiniteHypergroupSpec::z4_orbits().unwrap());
    specs.push(FiniteHypergroupSpec::cyclic(3).unwrap());
    specs.push(FiniteHypergroupSpec::cyclic(5).unwrap());
    specs
}

#[test]
fn svd_nullspace_agrees_with_elimination_on_random_low_rank_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let rows = rng.random_range(2..10);
        let cols = rng.random_range(2..10);
        let r = rng.random_range(0..=rows.min(cols));
        let left = DMatrix::from_fn(rows, r, |_, _| {
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let right = DMatrix::from_fn(r, cols, |_, _| {
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let a = left * right;
        let (rank, basis) = nullspace(&a);
        assert_eq!(rank, elimination_rank(&a, 1e-10), "{rows}x{cols} rank {r}");
        assert_eq!(rank, r);
        assert_eq!(basis.len(), cols - r);
        for v in &basis {
            assert!((&a * v).norm() < 1e-12);
        }
    }
}

#[test]
fn sine_space_dimension_agrees_with_elimination() {
    for spec in supplied_specs() {
        for m in find_exponentials(&spec, 1e-10).unwrap() {
            let system = spec.sine_system(&m);
            let dim = spec.size - elimination_rank(&system, 1e-10);
            assert_eq!(
                sine_space(&spec, &m, 1e-9).unwrap().len(),
                dim,
                "{}",
                spec.name
            );
            assert_eq!(dim, 0, "{}", spec.name);
        }
    }
}

#[test]
fn exponential_count_matches_element_count_for_commutative_specs() {
    // A finite commutative hypergroup has exactly as many exponentials as elements.
    for spec in supplied_specs() {
        assert_eq!(
            find_exponentials(&spec, 1e-10).unwrap().len(),
            spec.size,
            "{}",
            spec.name
        );
    }
}

#[test]
fn d_theta_exponentials_by_hand() {
    // δ_1 * δ_1 = θ δ_0 + (1 − θ) δ_1 forces m(1)² = θ + (1 − θ) m(1), so m(1) ∈ {1, −θ}.
    for theta in [0.1, 0.25, 0.5, 0.9] {
        let spec = FiniteHypergroupSpec::d_theta(theta).unwrap();
        let mut found: Vec<f64> = find_exponentials(&spec, 1e-10)
            .unwrap()
            .iter()
            .map(|m| m[1].re)
            .collect();
        found.sort_by(f64::total_cmp);
        assert!((found[0] + theta).abs() < 1e-12 && (found[1] - 1.0).abs() < 1e-12);
    }
}

fn legendre_a(r: usize) -> BigRational {
    // (1/2)_r / r!
    let mut v = BigRational::from_integer(1.into());
    for j in 0..r {
        v *= BigRational::new((2 * j + 1).into(), (2 * (j + 1)).into());
    }
    v
}

#[test]
fn legendre_linearization_matches_closed_form() {
    // P_m P_n = Σ_r A(m−r) A(r) A(n−r) / A(m+n−r) · (2m+2n−4r+1)/(2m+2n−2r+1) · P_{m+n−2r}
    let rec = ThreeTermRecurrence::legendre();
    for m in 0..16usize {
        for n in 0..16usize {
            let exact = linearize_exact(&rec, m, n).unwrap();
            let float = linearize(&rec, m, n).unwrap();
            let mut expected = vec![BigRational::from_integer(0.into()); m + n + 1];
            for r in 0..=m.min(n) {
                let num = legendre_a(m - r) * legendre_a(r) * legendre_a(n - r);
                let w = num / legendre_a(m + n - r)
                    * BigRational::new(
                        (2 * m + 2 * n - 4 * r + 1).into(),
                        (2 * m + 2 * n - 2 * r + 1).into(),
                    );
                expected[m + n - 2 * r] = w;
            }
            for l in 0..=m + n {
                let e = exact
                    .get(l)
                    .cloned()
                    .unwrap_or_else(|| BigRational::from_integer(0.into()));
                assert_eq!(e, expected[l], "m={m} n={n} l={l}");
                assert!((float.weight(&l) - expected[l].to_f64().unwrap()).abs() < 1e-13);
            }
        }
    }
}

#[test]
fn chebyshev_linearization_is_half_half() {
    let rec = ThreeTermRecurrence::chebyshev();
    for n in 0..30usize {
        for k in 0..30usize {
            let m = linearize(&rec, n, k).unwrap();
            if n == 0 || k == 0 {
                assert!(m.is_point_mass_at(&(n + k)));
            } else if n == k {
                assert!(
                    (m.weight(&0) - 0.5).abs() < 1e-14 && (m.weight(&(2 * n)) - 0.5).abs() < 1e-14
                );
            } else {
                assert!((m.weight(&n.abs_diff(k)) - 0.5).abs() < 1e-14);
                assert!((m.weight(&(n + k)) - 0.5).abs() < 1e-14);
            }
        }
    }
}

#[test]
fn polynomial_values_match_trigonometric_forms() {
    let cheb = ThreeTermRecurrence::chebyshev();
    for n in 0..50 {
        for t in [0.1f64, 1.0, 2.5] {
            let v = cheb.eval_p(n, c(t.cos(), 0.0)).unwrap();
            assert!((v - (n as f64 * t).cos()).norm() < 1e-12);
        }
        let (_, d) = cheb.eval_with_derivative(n, c(1.0, 0.0)).unwrap();
        assert!((d - (n * n) as f64).norm() < 1e-9 * (1.0 + (n * n) as f64));
        let (_, d) = ThreeTermRecurrence::legendre()
            .eval_with_derivative(n, c(1.0, 0.0))
            .unwrap();
        assert!((d - (n * (n + 1) / 2) as f64).norm() < 1e-9 * (1.0 + d.norm()));
    }
}

/// `Φ(n, λ) = (n+1)⁻¹ Σ_{j=0}^{n} e^{(n−2j)λ}`, the normalized character sum.
fn character_sum(n: usize, lambda: Complex64) -> (Complex64, Complex64) {
    let mut v = c(0.0, 0.0);
    let mut d = c(0.0, 0.0);
    for j in 0..=n {
        let k = n as f64 - 2.0 * j as f64;
        let e = (lambda * k).exp();
        v += e;
        d += e * k;
    }
    (v / (n + 1) as f64, d / (n + 1) as f64)
}

#[test]
fn su2_phi_matches_character_sums() {
    let lambdas = [
        c(0.0, 0.0),
        c(1e-9, 0.0),
        c(0.3, 0.0),
        c(0.5, 0.2),
        c(1.0, 0.0),
        c(0.0, std::f64::consts::PI),
        c(-0.4, 3.0),
    ];
    for lambda in lambdas {
        for n in 0..41 {
            let (v, d) = character_sum(n, lambda);
            assert!(
                (su2_phi(n, lambda) - v).norm() < 1e-11 * (1.0 + v.norm()),
                "n={n} λ={lambda}"
            );
            assert!(
                (su2_dphi(n, lambda) - d).norm() < 1e-9 * (1.0 + d.norm()),
                "n={n} λ={lambda}"
            );
        }
    }
}

#[test]
fn su2_convolution_matches_character_products() {
    // χ_k χ_n decomposes by Clebsch–Gordan; weights follow from Φ(k)Φ(n) = Σ w_l Φ(l).
    let lambda = c(0.37, 0.11);
    for k in 0..20 {
        for n in 0..20 {
            let m = su2_convolve(k, n);
            let lhs: Complex64 = m
                .support()
                .iter()
                .map(|(l, w)| su2_phi(*l, lambda) * *w)
                .sum();
            let rhs = character_sum(k, lambda).0 * character_sum(n, lambda).0;
            assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
        }
    }
}

#[test]
fn brute_force_grid_finds_only_the_computed_sine_functions() {
    // On S3 classes the normalized 2-dimensional character (1, 0, −½) vanishes at
    // the transpositions. Enumerate f on a coefficient grid and keep the exact solutions.
    use hypersine::residual::{all_pairs, sine_residual};
    use hypersine::Tabulated;
    let grid: Vec<f64> = (-4..=4).map(|k| k as f64 * 0.5).collect();
    let mut specs = vec![
        FiniteHypergroupSpec::s3_classes().unwrap(),
        FiniteHypergroupSpec::d_theta(0.25).unwrap(),
    ];
    specs.push(FiniteHypergroupSpec::z4_orbits().unwrap());
    for spec in specs {
        let pairs = all_pairs(&spec.elements());
        for m in find_exponentials(&spec, 1e-10).unwrap() {
            let mut solutions = 0;
            let n = spec.size;
            let total = grid.len().pow(n as u32);
            for code in 0..total {
                let mut k = code;
                let values: Vec<Complex64> = (0..n)
                    .map(|_| {
                        let v = grid[k % grid.len()];
                        k /= grid.len();
                        c(v, 0.0)
                    })
                    .collect();
                let f = Tabulated::new(values);
                if sine_residual(&spec, &f, &Tabulated::new(m.clone()), &pairs)
                    .unwrap()
                    .max_abs
                    < 1e-12
                {
                    solutions += 1;
                    assert!(hypersine::compact_vanishing_check(&spec, &m, &[f], 1e-12));
                }
            }
            let dim = sine_space(&spec, &m, 1e-9).unwrap().len();
            // Only the zero function survives, matching the empty computed basis.
            assert_eq!((solutions, dim), (1, 0), "{} m={m:?}", spec.name);
        }
    }
}
