//! The verification suites. Each returns its checks; a failed computation is
//! a failed check, never a panic.

use std::fmt::Display;

use hypersine::coset::{
    coset_apply, coset_exponential, coset_pairs, coset_sine, falsify_dalembert_alpha, group_inv,
    group_mul, group_sine_check, square_norm_check, square_norm_residual, verify_compat,
    AffineElement, CosetHypergroup, DoubleCoset,
};
use hypersine::finite::{
    compact_vanishing_check, find_exponentials, sine_space, FiniteHypergroupSpec,
};
use hypersine::hypergroup::Tabulated;
use hypersine::multipoly::{
    elements_in_box, fit_coefficients, multi_sine, reconstruct_multi_sine, MultiIndex,
    ProductPolyHypergroup,
};
use hypersine::poly::{
    derivative_product_rank, reconstruct_sine_report, sine_fn, PolyExponential,
    PolynomialHypergroup, ThreeTermRecurrence,
};
use hypersine::residual::{
    all_pairs, exp_residual, index_pairs, power_identity_check, sine_residual, ResidualAccumulator,
};
use hypersine::sturm::{
    closed_form, cosh_hypergroup_check, dlambda_phi, homogeneous_uniqueness, solve_phi, solve_sine,
    SturmLiouvilleFunction,
};
use hypersine::su2::{
    su2_additive, su2_convolve, su2_necessity_check, su2_recurrence_check, Su2Exponential,
    Su2Hypergroup, Su2Sine,
};
use hypersine::{Hypergroup, HypergroupFn, ResidualReport};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::{fmt_complex, SuiteConfig};
use crate::report::{Check, Criterion};
use crate::CliError;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) struct Recorder<'a> {
    suite: &'static str,
    cfg: &'a SuiteConfig,
    pub checks: Vec<Check>,
}

impl<'a> Recorder<'a> {
    pub fn new(suite: &'static str, cfg: &'a SuiteConfig) -> Self {
        Self {
            suite,
            cfg,
            checks: Vec::new(),
        }
    }

    fn push<E: Display>(
        &mut self,
        name: String,
        tol: f64,
        criterion: Criterion,
        r: Result<ResidualReport, E>,
    ) {
        let check = match r {
            Ok(r) => Check::from_report(self.suite, name, tol, criterion, &r),
            Err(e) => Check::errored(self.suite, name, tol, criterion, e),
        };
        self.checks.push(check);
    }

    fn rel<E: Display>(&mut self, name: impl Into<String>, tol: f64, r: Result<ResidualReport, E>) {
        let tol = self.cfg.tol_or(tol);
        self.push(name.into(), tol, Criterion::MaxRelAtMost, r);
    }

    fn abs<E: Display>(&mut self, name: impl Into<String>, tol: f64, r: Result<ResidualReport, E>) {
        let tol = self.cfg.tol_or(tol);
        self.push(name.into(), tol, Criterion::MaxAbsAtMost, r);
    }

    /// The residual must be at least `bound`.
    fn at_least<E: Display>(
        &mut self,
        name: impl Into<String>,
        bound: f64,
        r: Result<ResidualReport, E>,
    ) {
        self.push(name.into(), bound, Criterion::MaxAbsAtLeast, r);
    }

    /// `discrepancy` must be exactly zero.
    fn exact(
        &mut self,
        name: impl Into<String>,
        discrepancy: f64,
        samples: usize,
        witness: String,
    ) {
        let r = ResidualReport {
            max_abs: discrepancy,
            max_rel: discrepancy,
            witness,
            samples,
        };
        self.push(
            name.into(),
            0.0,
            Criterion::MaxAbsAtMost,
            Ok::<_, String>(r),
        );
    }
}

fn report(max_abs: f64, witness: String, samples: usize) -> ResidualReport {
    ResidualReport {
        max_abs,
        max_rel: max_abs,
        witness,
        samples,
    }
}

fn draw_complex(rng: &mut ChaCha8Rng, re: (f64, f64), im: (f64, f64)) -> Complex64 {
    c(rng.random_range(re.0..re.1), rng.random_range(im.0..im.1))
}

/// Sine functions `n ↦ P_n'(λ)` on Chebyshev and Legendre (or a supplied
/// recurrence), and their reconstruction from `f(1)`.
pub(crate) fn polyone(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, CliError> {
    let mut rec_out = Recorder::new("polyone", cfg);
    let recs = match &cfg.recurrence {
        Some(path) => vec![ThreeTermRecurrence::load(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?],
        None => vec![
            ThreeTermRecurrence::chebyshev(),
            ThreeTermRecurrence::legendre(),
        ],
    };
    let lambdas = cfg.lambdas_or(&[
        c(0.3, 0.0),
        c(0.7, 0.0),
        c(1.0, 0.0),
        c(1.5, 0.0),
        c(0.5, 0.5),
    ]);
    let requested = cfg.n_max.unwrap_or(64);
    for rec in recs {
        let name = rec.name().to_string();
        let n_max = match rec.max_degree() {
            Some(d) => requested.min(d / 2),
            None => requested,
        };
        if n_max == 0 {
            return Err(CliError::Config(format!(
                "recurrence {name} is too short to linearize any product"
            )));
        }
        let hg = match PolynomialHypergroup::with_table(rec.clone(), n_max) {
            Ok(hg) => hg,
            Err(e) => {
                rec_out.push(
                    format!("{name}: nonnegative linearization up to {n_max}"),
                    0.0,
                    Criterion::MaxAbsAtMost,
                    Err(e),
                );
                continue;
            }
        };
        let pairs = index_pairs(n_max);
        for &lambda in &lambdas {
            let l = fmt_complex(lambda);
            let r = (|| {
                let f = sine_fn(&rec, c(1.0, 0.0), lambda).tabulate(2 * n_max)?;
                let m = PolyExponential::new(&rec, lambda).tabulate(2 * n_max)?;
                sine_residual(&hg, &f, &m, &pairs)
            })();
            rec_out.rel(
                format!("{name}: n ↦ P_n'(λ) is an m_λ-sine function, λ={l}, n,k ≤ {n_max}"),
                1e-9,
                r,
            );
            if lambda != c(1.0, 0.0) {
                let r = derivative_product_rank(&rec, lambda, n_max)
                    .map(|rank| report(rank.abs_diff(2) as f64, format!("rank {rank}"), 1));
                rec_out.abs(
                    format!("{name}: P_n'(λ) is not additive × exponential, λ={l}"),
                    0.0,
                    r,
                );
            }
        }
        let mut necessity = Vec::new();
        for i in 0..20 {
            let lambda = draw_complex(rng, (-1.5, 1.5), (-0.5, 0.5));
            let f1 = draw_complex(rng, (-2.0, 2.0), (-2.0, 2.0));
            let r = reconstruct_sine_report(&rec, lambda, f1, n_max).map(|(_, r)| ResidualReport {
                witness: format!(
                    "draw {i}, λ={}, f(1)={}, {}",
                    fmt_complex(lambda),
                    fmt_complex(f1),
                    r.witness
                ),
                ..r
            });
            necessity.push(r);
        }
        let merged = necessity
            .into_iter()
            .reduce(|a, b| Ok(a?.merge(b?)))
            .expect("twenty draws");
        rec_out.rel(
            format!("{name}: sine function rebuilt from f(1) equals f(1)·P_n'(λ)/P_1'(λ), 20 draws, n ≤ {n_max}"),
            1e-9,
            merged,
        );
    }
    Ok(rec_out.checks)
}

pub(crate) fn su2(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, CliError> {
    let mut out = Recorder::new("su2", cfg);
    let m11 = su2_convolve(1, 1);
    let d = (m11.weight(&0) - 0.25).abs()
        + (m11.weight(&2) - 0.75).abs()
        + (m11.len() as f64 - 2.0).abs();
    out.exact(
        "δ_1 * δ_1 = ¼δ_0 + ¾δ_2",
        d,
        1,
        format!("{:?}", m11.support()),
    );

    let mut acc = ResidualAccumulator::new();
    for k in 0..=100 {
        for n in 0..=100 {
            let m = su2_convolve(k, n);
            let neg: f64 = m.support().iter().map(|(_, w)| (-w).max(0.0)).sum();
            acc.record(c(m.total_weight() - 1.0 + neg, 0.0), 0.0, || {
                format!("k={k}, n={n}")
            });
        }
    }
    out.abs(
        "δ_k * δ_n is a probability measure, k,n ≤ 100",
        1e-12,
        acc.finish(),
    );

    let n_max = cfg.n_max.unwrap_or(40);
    let pairs = index_pairs(n_max);
    for lambda in cfg.lambdas_or(&[c(0.3, 0.0), c(0.5, 0.2), c(1.0, 0.0)]) {
        let l = fmt_complex(lambda);
        let f = Su2Sine {
            scale: c(1.0, 0.0),
            lambda,
        }
        .tabulate(2 * n_max);
        let m = Su2Exponential { lambda }.tabulate(2 * n_max);
        out.rel(
            format!("∂_λΦ is an m_λ-sine function, λ={l}, n,k ≤ {n_max}"),
            1e-9,
            sine_residual(&Su2Hypergroup, &f, &m, &pairs),
        );
        out.rel(
            format!("∂_λΦ satisfies the three-term sine recurrence, λ={l}"),
            1e-9,
            su2_recurrence_check(&f, &m, 2 * n_max - 2),
        );
        let f1 = draw_complex(rng, (-2.0, 2.0), (-2.0, 2.0));
        out.rel(
            format!(
                "recurrence from f(1)={} gives (f(1)/sinh λ)·∂_λΦ, λ={l}",
                fmt_complex(f1)
            ),
            1e-8,
            su2_necessity_check(f1, lambda, n_max),
        );
    }
    let additive = su2_additive(c(1.0, 0.0));
    let one = Su2Exponential {
        lambda: c(0.0, 0.0),
    };
    out.rel(
        format!("n ↦ n(n+2) is additive (λ = 0), n,k ≤ {n_max}"),
        1e-10,
        sine_residual(&Su2Hypergroup, &additive, &one, &pairs),
    );
    Ok(out.checks)
}

/// A function on the box `{0..=side}^d`, stored densely.
struct BoxTable {
    side: usize,
    values: Vec<Complex64>,
}

impl BoxTable {
    fn build<F: HypergroupFn<MultiIndex>>(f: &F, d: usize, side: usize) -> hypersine::Result<Self> {
        let values = elements_in_box(d, side)
            .iter()
            .map(|x| f.eval(x))
            .collect::<hypersine::Result<Vec<_>>>()?;
        Ok(Self { side, values })
    }
}

impl HypergroupFn<MultiIndex> for BoxTable {
    fn eval(&self, x: &MultiIndex) -> hypersine::Result<Complex64> {
        let mut idx = 0;
        for v in &x.0 {
            if *v > self.side {
                return Err(hypersine::Error::Evaluation {
                    element: format!("{x:?}"),
                });
            }
            idx = idx * (self.side + 1) + v;
        }
        self.values
            .get(idx)
            .copied()
            .ok_or_else(|| hypersine::Error::Evaluation {
                element: format!("{x:?}"),
            })
    }
}

pub(crate) fn sinsev(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, CliError> {
    let mut out = Recorder::new("sinsev", cfg);
    let side = cfg.n_max.unwrap_or(12);
    let cheb = ThreeTermRecurrence::chebyshev;
    let leg = ThreeTermRecurrence::legendre;
    let cases: Vec<(Vec<ThreeTermRecurrence>, Vec<Complex64>)> = match cfg.lambdas.len() {
        2 => vec![(vec![cheb(), leg()], cfg.lambdas.clone())],
        3 => vec![(vec![cheb(), leg(), cheb()], cfg.lambdas.clone())],
        _ => vec![
            (vec![cheb(), leg()], vec![c(0.7, 0.0), c(0.3, 0.0)]),
            (vec![cheb(), leg()], vec![c(0.5, 0.5), c(-0.4, 0.0)]),
            (
                vec![cheb(), leg(), cheb()],
                vec![c(0.4, 0.0), c(-0.6, 0.0), c(0.9, 0.1)],
            ),
        ],
    };
    for (factors, lambda) in cases {
        let d = factors.len();
        let l = lambda
            .iter()
            .map(|z| fmt_complex(*z))
            .collect::<Vec<_>>()
            .join(", ");
        let hg = ProductPolyHypergroup::with_tables(factors, side)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let coeffs: Vec<Complex64> = (0..d)
            .map(|_| draw_complex(rng, (-2.0, 2.0), (-2.0, 2.0)))
            .collect();
        let r = (|| {
            let f = BoxTable::build(&multi_sine(&hg, &coeffs, &lambda)?, d, 2 * side)?;
            let m = BoxTable::build(
                &hypersine::multipoly::MultiExponential::new(&hg, &lambda)?,
                d,
                2 * side,
            )?;
            let elements = elements_in_box(d, side);
            let pairs: Vec<(MultiIndex, MultiIndex)> = if d == 2 {
                all_pairs(&elements)
            } else {
                let small = elements_in_box(d, 3);
                let mut p = all_pairs(&small);
                for _ in 0..cfg.samples {
                    let x = elements[rng.random_range(0..elements.len())].clone();
                    let y = elements[rng.random_range(0..elements.len())].clone();
                    p.push((x, y));
                }
                p
            };
            sine_residual(&hg, &f, &m, &pairs)
        })();
        out.rel(
            format!(
                "d={d}: Σ c_j ∂_j Q_x(λ) is an m_λ-sine function, λ=({l}), coordinates ≤ {side}"
            ),
            1e-9,
            r,
        );

        let f = multi_sine(&hg, &coeffs, &lambda).map_err(|e| CliError::Config(e.to_string()))?;
        let r = fit_coefficients(&hg, &f, &lambda, side).map(|fit| {
            let err = fit
                .coefficients
                .iter()
                .zip(&coeffs)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            ResidualReport {
                max_abs: err.max(fit.report.max_rel),
                max_rel: err.max(fit.report.max_rel),
                witness: format!("coefficient error {err:.3e}; {}", fit.report),
                samples: fit.report.samples,
            }
        });
        out.abs(
            format!("d={d}: fit_coefficients recovers c, λ=({l})"),
            1e-9,
            r,
        );

        let unit: Vec<Complex64> = (0..d)
            .map(|j| f.eval(&MultiIndex::unit(d, j)))
            .collect::<hypersine::Result<_>>()?;
        let r = reconstruct_multi_sine(&hg, &lambda, &unit, side).and_then(|values| {
            let mut acc = ResidualAccumulator::new();
            for (x, v) in values {
                let want = f.eval(&x)?;
                acc.record(v - want, want.norm(), || format!("{x:?}"));
            }
            acc.finish()
        });
        out.rel(
            format!(
                "d={d}: sine equation alone determines f from f(e_j), λ=({l}), degree ≤ {side}"
            ),
            1e-9,
            r,
        );
    }
    Ok(out.checks)
}

fn sturm_families(cfg: &SuiteConfig) -> Result<Vec<SturmLiouvilleFunction>, CliError> {
    Ok(if cfg.a_const {
        vec![SturmLiouvilleFunction::Constant]
    } else if let Some(alpha) = cfg.alpha {
        vec![SturmLiouvilleFunction::power(alpha).map_err(|e| CliError::Usage(e.to_string()))?]
    } else {
        vec![
            SturmLiouvilleFunction::Constant,
            SturmLiouvilleFunction::power(0.5).expect("valid α"),
        ]
    })
}

pub(crate) fn sturm(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, CliError> {
    let mut out = Recorder::new("sturm", cfg);
    let (x_max, h) = (cfg.x_max, cfg.h);
    let lambdas = cfg.lambdas_or(&[c(0.5, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.5)]);
    for a in sturm_families(cfg)? {
        let fam = format!("{a:?}");
        let r = solve_phi(&a, c(0.0, 0.0), x_max, h).map(|s| {
            report(
                s.max_error_against(|_| c(1.0, 0.0)),
                "λ = 0".into(),
                s.grid.len(),
            )
        });
        out.exact_from(format!("{fam}: Φ(·, 0) ≡ 1"), r);
        for &lambda in &lambdas {
            let l = fmt_complex(lambda);
            let phi = solve_phi(&a, lambda, x_max, h);
            if closed_form(&a, 0.0, lambda).is_some() {
                let r = phi.as_ref().map(|s| {
                    let e =
                        s.max_error_against(|x| closed_form(&a, x, lambda).expect("closed form").0);
                    report(e, format!("x ∈ [0, {x_max}], h = {h}"), s.grid.len())
                });
                out.abs(format!("{fam}: Φ matches its closed form, λ={l}"), 1e-6, r);
            }
            let r = phi.as_ref().map(|s| {
                report(
                    s.scaled_residual(),
                    "max residual / (h²·local scale)".into(),
                    s.grid.len(),
                )
            });
            out.abs(
                format!("{fam}: ODE residual of Φ on interior nodes ≤ 10 h²·scale, λ={l}"),
                10.0,
                r,
            );

            let dphi = dlambda_phi(&a, lambda, x_max, h);
            let sine = solve_sine(&a, lambda, c(1.0, 0.0), x_max, h);
            let r = match (&dphi, &sine) {
                (Ok(g), Ok(f)) => g
                    .max_difference(f)
                    .map(|e| report(e, format!("x ∈ [0, {x_max}]"), g.grid.len()))
                    .map_err(|e| e.to_string()),
                (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
            };
            out.abs(
                format!("{fam}: ∂_λΦ solves the sine ODE with c = 1, λ={l}"),
                1e-5,
                r,
            );
            if closed_form(&a, 0.0, lambda).is_some() {
                let r = dphi.as_ref().map(|g| {
                    let e =
                        g.max_error_against(|x| closed_form(&a, x, lambda).expect("closed form").1);
                    report(e, format!("x ∈ [0, {x_max}]"), g.grid.len())
                });
                out.abs(
                    format!("{fam}: ∂_λΦ matches its closed form, λ={l}"),
                    1e-5,
                    r,
                );
            }
            let scale = draw_complex(rng, (-2.0, 2.0), (-2.0, 2.0));
            let r = homogeneous_uniqueness(&a, lambda, scale, x_max, h)
                .map(|v| report(v, format!("c = {}", fmt_complex(scale)), 1));
            out.abs(
                format!("{fam}: zero data forces the zero solution, λ={l}"),
                1e-10,
                r,
            );
        }
    }
    if sturm_families(cfg)?
        .iter()
        .any(|a| matches!(a, SturmLiouvilleFunction::Constant))
    {
        let mut samples = vec![(1.0, 2.5), (1.0, 1.0), (0.0, 1.3), (2.0, 0.0)];
        for _ in 0..cfg.samples {
            samples.push((rng.random_range(0.0..x_max), rng.random_range(0.0..x_max)));
        }
        for &lambda in &lambdas {
            let l = fmt_complex(lambda);
            match cosh_hypergroup_check(lambda, &samples) {
                Ok(check) => {
                    out.rel(
                        format!("A≡1: cosh(√λ·) is an exponential of ½δ_(x+y) + ½δ_|x−y|, λ={l}"),
                        1e-12,
                        Ok::<_, String>(check.exponential),
                    );
                    out.rel(
                        format!("A≡1: ∂_λ cosh(√λ·) is an m_λ-sine function, λ={l}"),
                        1e-10,
                        Ok::<_, String>(check.sine),
                    );
                }
                Err(e) => out.rel(
                    format!("A≡1: explicit convolution checks, λ={l}"),
                    1e-10,
                    Err(e),
                ),
            }
        }
    }
    Ok(out.checks)
}

impl Recorder<'_> {
    fn exact_from<E: Display>(&mut self, name: String, r: Result<ResidualReport, E>) {
        self.push(name, 0.0, Criterion::MaxAbsAtMost, r);
    }
}

fn draw_affine(rng: &mut ChaCha8Rng) -> AffineElement {
    let x = rng.random_range(0.1..10.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    AffineElement::new(x, rng.random_range(-10.0..10.0)).expect("x ≠ 0")
}

/// A dyadic rational `k / 64` with `|k| < 2^10`, so sums and products of a
/// few of them are exact in double precision.
fn draw_dyadic(rng: &mut ChaCha8Rng, nonzero: bool) -> f64 {
    loop {
        let k: i32 = rng.random_range(-1023..=1023);
        if !nonzero || k != 0 {
            return k as f64 / 64.0;
        }
    }
}

pub(crate) fn coset(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, CliError> {
    let mut out = Recorder::new("coset", cfg);
    let samples: Vec<(AffineElement, AffineElement)> = (0..cfg.samples)
        .map(|_| (draw_affine(rng), draw_affine(rng)))
        .collect();
    let pairs = coset_pairs(&samples);
    let hg = CosetHypergroup;
    for lambda in cfg.lambdas_or(&[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.5, 0.5)]) {
        let l = fmt_complex(lambda);
        let m = coset_exponential(lambda);
        out.rel(
            format!("|x|^λ is an exponential, λ={l}"),
            1e-12,
            exp_residual(&hg, &m, &pairs),
        );
        let scale = draw_complex(rng, (-2.0, 2.0), (-2.0, 2.0));
        let f = coset_sine(scale, lambda);
        out.rel(
            format!(
                "c|x|^λ ln|x| is an m_λ-sine function, c={}, λ={l}",
                fmt_complex(scale)
            ),
            1e-10,
            sine_residual(&hg, &f, &m, &pairs),
        );
        // Both averaged terms of m_λ coincide, so the convolution adds no rounding of its own.
        let mut worst = 0.0f64;
        let mut witness = String::from("all equal");
        for (p, q) in &samples {
            let a: DoubleCoset = group_mul(*p, *q).into();
            let b: DoubleCoset = AffineElement {
                x: -p.x * q.x,
                u: -p.x * q.u + p.u,
            }
            .into();
            let d = (m.eval(&a)? - m.eval(&b)?).norm();
            if d > worst {
                worst = d;
                witness = format!("{p:?}, {q:?}");
            }
        }
        out.exact(
            format!("both convolution terms of |x|^λ agree, λ={l}"),
            worst,
            samples.len(),
            witness,
        );
        let compat = samples.iter().all(|(p, _)| {
            verify_compat(|g| m.eval(&g.into()).expect("total"), &[*p])
                && verify_compat(|g| f.eval(&g.into()).expect("total"), &[*p])
        });
        out.exact(
            format!("m_λ and the sine function are compatible, λ={l}"),
            if compat { 0.0 } else { 1.0 },
            samples.len(),
            String::new(),
        );
    }
    for lambda in [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0)] {
        out.rel(
            format!(
                "on the group, ln|x|·|x|^λ is a sine function with additive ln|x|, λ={}",
                fmt_complex(lambda)
            ),
            1e-12,
            group_sine_check(lambda, &samples),
        );
    }
    let identity_check = (|| -> hypersine::Result<ResidualReport> {
        let f = coset_sine(c(1.0, 0.0), c(0.0, 0.0));
        let v = coset_apply(
            &f,
            AffineElement::new(2.0, 1.0)?,
            AffineElement::new(3.0, -4.0)?,
        )?;
        Ok(report(
            (v - 6.0f64.ln()).norm(),
            "p=(2,1), q=(3,−4), λ=0".into(),
            1,
        ))
    })();
    out.abs(
        "ln|x| convolves to ln 2 + ln 3 at (2,1)*(3,−4)",
        1e-15,
        identity_check,
    );

    // d'Alembert candidate |x|^λ cosh(αu) with α ≠ 0.
    let (p, q) = (AffineElement::new(2.0, 1.0)?, AffineElement::new(1.0, 1.0)?);
    let oracle = (3.0f64.cosh() + 1.0f64.cosh() - 2.0 * 1.0f64.cosh() * 1.0f64.cosh()).abs();
    let r = falsify_dalembert_alpha(c(0.0, 0.0), c(1.0, 0.0), &[(p, q)]).map(|r| ResidualReport {
        max_abs: (r.max_abs - oracle).abs(),
        max_rel: (r.max_abs - oracle).abs(),
        witness: format!(
            "residual {} vs cosh 3 + cosh 1 − 2cosh²1 = {oracle} at {p:?}, {q:?}",
            r.max_abs
        ),
        samples: 1,
    });
    out.abs(
        "α=1, λ=0: d'Alembert candidate residual at (2,1),(1,1) matches direct evaluation",
        1e-6,
        r,
    );
    let few: Vec<_> = samples.iter().take(100).copied().collect();
    out.at_least(
        "α=0.5, λ=1: d'Alembert candidate fails the exponential equation",
        0.1,
        falsify_dalembert_alpha(c(1.0, 0.0), c(0.5, 0.0), &few),
    );

    let uv: Vec<(f64, f64)> = (0..cfg.samples)
        .map(|_| (draw_dyadic(rng, false), draw_dyadic(rng, false)))
        .collect();
    let mut uv_exact = vec![(1.5, -2.0)];
    uv_exact.extend(uv);
    out.abs(
        "u ↦ u² solves the square-norm equation (dyadic samples, exact)",
        0.0,
        square_norm_residual(c(1.0, 0.0), &uv_exact),
    );
    let r = square_norm_check(
        c(1.0, 0.0),
        c(1.0, 0.0),
        &[(1.5, -2.0)],
        &[(AffineElement::new(2.0, 1.0)?, AffineElement::new(3.0, 1.0)?)],
    )
    .map(|s| s.candidate);
    out.at_least(
        "a=1, λ=1: quadratic term a·u²|x|^λ breaks the sine equation at (2,1),(3,1)",
        0.5,
        r,
    );

    // Group identities on dyadic samples, where they must hold bit for bit.
    let mut assoc_bad = 0usize;
    let mut normal_bad = 0usize;
    let mut inverse_bad = 0usize;
    let n = cfg.samples;
    for _ in 0..n {
        let g = |rng: &mut ChaCha8Rng| {
            AffineElement::new(draw_dyadic(rng, true), draw_dyadic(rng, false)).expect("x ≠ 0")
        };
        let (p, q, r) = (g(rng), g(rng), g(rng));
        if group_mul(group_mul(p, q), r) != group_mul(p, group_mul(q, r)) {
            assoc_bad += 1;
        }
        // Powers of two keep 1/x exact.
        let k: i32 = rng.random_range(-6..=6);
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let s = AffineElement::new(sign * 2f64.powi(k), p.u).expect("x ≠ 0");
        let w = group_mul(
            group_mul(s, AffineElement::new(-1.0, 0.0).expect("x ≠ 0")),
            group_inv(s),
        );
        if w != AffineElement::new(-1.0, 2.0 * s.u).expect("x ≠ 0") {
            normal_bad += 1;
        }
        if group_mul(s, group_inv(s)) != AffineElement::IDENTITY
            || group_mul(group_inv(s), s) != AffineElement::IDENTITY
        {
            inverse_bad += 1;
        }
    }
    out.exact(
        "group law is associative (dyadic samples)",
        assoc_bad as f64,
        n,
        format!("{assoc_bad} mismatches"),
    );
    out.exact(
        "(x,u)(−1,0)(x,u)⁻¹ = (−1, 2u): K is not normal",
        normal_bad as f64,
        n,
        format!("{normal_bad} mismatches"),
    );
    out.exact(
        "p·p⁻¹ = p⁻¹·p = (1, 0)",
        inverse_bad as f64,
        n,
        format!("{inverse_bad} mismatches"),
    );

    let bump = |d: &DoubleCoset| c((-d.u() * d.u()).exp(), 0.0);
    let r = (|| -> hypersine::Result<ResidualReport> {
        let pq = coset_apply(&bump, p, q)?;
        let qp = coset_apply(&bump, q, p)?;
        Ok(report(
            (pq - qp).norm(),
            format!("f = exp(−u²), p={p:?}, q={q:?}: {pq} vs {qp}"),
            1,
        ))
    })();
    out.at_least("convolution is not commutative", 0.1, r);
    let ident = samples
        .iter()
        .map(|(p, _)| {
            (coset_apply(&bump, *p, AffineElement::IDENTITY).unwrap_or(c(f64::NAN, 0.0))
                - bump(&(*p).into()))
            .norm()
        })
        .fold(0.0, f64::max);
    out.exact(
        "(1, 0) is the identity coset",
        ident,
        samples.len(),
        String::new(),
    );
    let d = pairs
        .iter()
        .map(|(x, _)| {
            let m = hg.convolve(x, &hg.identity());
            match m {
                Ok(m) if m.is_point_mass_at(x) => 0.0,
                _ => 1.0,
            }
        })
        .sum::<f64>();
    out.exact("δ_p * δ_o = δ_p", d, pairs.len(), String::new());
    Ok(out.checks)
}

fn supplied_specs(
    cfg: &SuiteConfig,
    thetas: &[f64],
) -> Result<Vec<FiniteHypergroupSpec>, CliError> {
    let cfgerr = |e: hypersine::Error| CliError::Config(e.to_string());
    let mut specs = thetas
        .iter()
        .map(|t| FiniteHypergroupSpec::d_theta(*t))
        .collect::<hypersine::Result<Vec<_>>>()
        .map_err(cfgerr)?;
    specs.push(FiniteHypergroupSpec::s3_classes().map_err(cfgerr)?);
    specs.push(FiniteHypergroupSpec::z4_orbits().map_err(cfgerr)?);
    specs.push(FiniteHypergroupSpec::cyclic(3).map_err(cfgerr)?);
    for path in &cfg.specs {
        specs.push(
            FiniteHypergroupSpec::load(path)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?,
        );
    }
    Ok(specs)
}

pub(crate) fn compact(cfg: &SuiteConfig, _rng: &mut ChaCha8Rng) -> Result<Vec<Check>, CliError> {
    let mut out = Recorder::new("compact", cfg);
    let thetas = match cfg.theta {
        Some(t) => vec![t],
        None => vec![0.1, 0.25, 0.5, 0.9],
    };
    let n_pow = cfg.n_max.unwrap_or(8);
    for &theta in &thetas {
        let spec =
            FiniteHypergroupSpec::d_theta(theta).map_err(|e| CliError::Config(e.to_string()))?;
        let pairs = all_pairs(&spec.elements());
        for m in FiniteHypergroupSpec::d_theta_exponentials(theta) {
            let label = format!(
                "D({theta}), m = ({})",
                m.iter()
                    .map(|z| fmt_complex(*z))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            let mt = Tabulated::new(m.clone());
            out.abs(
                format!("{label}: exponential equation up to rounding"),
                4.0 * f64::EPSILON,
                exp_residual(&spec, &mt, &pairs),
            );
            let r = sine_space(&spec, &m, 1e-9).map(|b| {
                report(
                    b.len() as f64,
                    format!("sine-space dimension {}", b.len()),
                    1,
                )
            });
            out.exact_from(format!("{label}: sine space is {{0}}"), r);
            let zero = Tabulated::zeros(spec.size);
            let mut merged: Option<hypersine::Result<ResidualReport>> = None;
            for (x, y) in &pairs {
                let r = power_identity_check(&spec, &zero, &mt, x, y, n_pow);
                merged = Some(match merged {
                    None => r,
                    Some(prev) => prev.and_then(|p| Ok(p.merge(r?))),
                });
            }
            out.rel(
                format!("{label}: f(x*yⁿ) identity for the sine space, n ≤ {n_pow}"),
                1e-10,
                merged.expect("pairs"),
            );
        }
    }
    let cheb = ThreeTermRecurrence::chebyshev();
    let hg = PolynomialHypergroup::new(cheb.clone());
    for lambda in [c(0.3, 0.0), c(0.9, 0.0), c(0.5, 0.5)] {
        let f = sine_fn(&cheb, c(1.0, 0.0), lambda);
        let m = PolyExponential::new(&cheb, lambda);
        let mut merged: Option<hypersine::Result<ResidualReport>> = None;
        for x in 0..=4usize {
            for y in 1..=4usize {
                let r = power_identity_check(&hg, &f, &m, &x, &y, n_pow);
                merged = Some(match merged {
                    None => r,
                    Some(prev) => prev.and_then(|p| Ok(p.merge(r?))),
                });
            }
        }
        out.rel(
            format!(
                "Chebyshev truncated to degree {}: f(x*yⁿ) identity, λ={}, n ≤ {n_pow}",
                4 + 4 * n_pow,
                fmt_complex(lambda)
            ),
            1e-10,
            merged.expect("pairs"),
        );
    }
    for spec in supplied_specs(cfg, &thetas)? {
        let exps = match find_exponentials(&spec, 1e-10) {
            Ok(e) => e,
            Err(e) => {
                out.exact_from(format!("{}: exponentials", spec.name), Err(e));
                continue;
            }
        };
        if spec.is_commutative() {
            let d = exps.len().abs_diff(spec.size) as f64;
            out.exact(
                format!("{}: one exponential per element", spec.name),
                d,
                1,
                format!("{} found", exps.len()),
            );
        }
        let mut dims = Vec::new();
        let mut vanish_fail = 0usize;
        let mut errors = Vec::new();
        for m in &exps {
            match sine_space(&spec, m, 1e-9) {
                Ok(basis) => {
                    dims.push(basis.len());
                    if !compact_vanishing_check(&spec, m, &basis, 1e-10) {
                        vanish_fail += 1;
                    }
                }
                Err(e) => errors.push(e.to_string()),
            }
        }
        let witness = if errors.is_empty() {
            format!("sine-space dimensions {dims:?}")
        } else {
            errors.join("; ")
        };
        out.exact(
            format!("{}: f·m = 0 for every computed sine function", spec.name),
            (vanish_fail + errors.len()) as f64,
            exps.len(),
            witness,
        );
    }
    Ok(out.checks)
}

/// Runs a suite by name.
pub(crate) fn dispatch(
    name: &str,
    cfg: &SuiteConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Check>, CliError> {
    match name {
        "polyone" => polyone(cfg, rng),
        "su2" => su2(cfg, rng),
        "sinsev" => sinsev(cfg, rng),
        "sturm" => sturm(cfg, rng),
        "coset" => coset(cfg, rng),
        "compact" => compact(cfg, rng),
        other => Err(CliError::Usage(format!("unknown suite {other:?}"))),
    }
}
