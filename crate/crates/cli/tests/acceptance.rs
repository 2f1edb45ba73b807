//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hypersine::coset::{coset_exponential, DoubleCoset};
use hypersine::dual::{central_difference, differentiate, Dual, Scalar};
use hypersine::multipoly::{MultiIndex, ProductPolyHypergroup};
use hypersine::poly::ThreeTermRecurrence;
use hypersine::sturm::{closed_form, dlambda_phi, solve_phi, SturmLiouvilleFunction};
use hypersine::su2::su2_phi_scalar;
use hypersine::HypergroupFn;
use hypersine_cli::{run_suite, Check, SuiteConfig, SuiteReport};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(suite: &str) -> (SuiteReport, Duration) {
    let start = Instant::now();
    let report = run_suite(&SuiteConfig::new(suite)).expect("default configuration is valid");
    (report, start.elapsed())
}

/// The checks whose names contain every one of `needles`.
fn select<'a>(report: &'a SuiteReport, needles: &[&str]) -> Vec<&'a Check> {
    report
        .checks
        .iter()
        .filter(|c| needles.iter().all(|n| c.check.contains(n)))
        .collect()
}

fn worst(checks: &[&Check]) -> String {
    let rel = checks.iter().filter_map(|c| c.max_rel).fold(0.0, f64::max);
    let abs = checks.iter().filter_map(|c| c.max_abs).fold(0.0, f64::max);
    format!("worst rel {rel:.2e}, worst abs {abs:.2e}")
}

/// All of `checks` pass, and there are exactly `expected` of them.
fn all_pass(checks: &[&Check], expected: usize) -> Outcome {
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} ({})", c.check, c.witness))
        .collect();
    Outcome {
        pass: failed.is_empty() && checks.len() == expected,
        detail: if failed.is_empty() {
            format!("{}/{expected} checks, {}", checks.len(), worst(checks))
        } else {
            format!("failed: {}", failed.join("; "))
        },
    }
}

fn combine(parts: Vec<(&str, Outcome)>) -> Outcome {
    Outcome {
        pass: parts.iter().all(|(_, o)| o.pass),
        detail: parts
            .iter()
            .map(|(label, o)| format!("{label}: {}", o.detail))
            .collect::<Vec<_>>()
            .join(" | "),
    }
}

fn criterion_1(polyone: &(SuiteReport, Duration)) -> Outcome {
    let (report, elapsed) = polyone;
    let mut o = all_pass(
        &select(report, &["P_n'(λ) is an m_λ-sine function", "n,k ≤ 64"]),
        10,
    );
    o.pass &= *elapsed < Duration::from_secs(5);
    o.detail = format!(
        "{}; suite time {:.2} s (limit 5 s)",
        o.detail,
        elapsed.as_secs_f64()
    );
    o
}

fn criterion_2(polyone: &(SuiteReport, Duration)) -> Outcome {
    all_pass(
        &select(&polyone.0, &["rebuilt from f(1)", "20 draws", "n ≤ 64"]),
        2,
    )
}

fn criterion_3(compact: &SuiteReport) -> Outcome {
    combine(vec![
        (
            "dimension",
            all_pass(&select(compact, &["D(", "sine space is {0}"]), 8),
        ),
        (
            "exponentials",
            all_pass(&select(compact, &["D(", "exponential equation"]), 8),
        ),
    ])
}

fn criterion_4(compact: &SuiteReport) -> Outcome {
    combine(vec![
        (
            "D(θ) power identity",
            all_pass(&select(compact, &["D(", "f(x*yⁿ) identity", "n ≤ 8"]), 8),
        ),
        (
            "Chebyshev power identity",
            all_pass(&select(compact, &["Chebyshev truncated", "n ≤ 8"]), 3),
        ),
        ("vanishing", all_pass(&select(compact, &["f·m = 0"]), 7)),
    ])
}

fn criterion_5(su2: &SuiteReport) -> Outcome {
    combine(vec![
        (
            "δ1*δ1",
            all_pass(&select(su2, &["δ_1 * δ_1 = ¼δ_0 + ¾δ_2"]), 1),
        ),
        (
            "weights",
            all_pass(&select(su2, &["probability measure", "k,n ≤ 100"]), 1),
        ),
        (
            "sine",
            all_pass(
                &select(su2, &["∂_λΦ is an m_λ-sine function", "n,k ≤ 40"]),
                3,
            ),
        ),
        (
            "additive",
            all_pass(&select(su2, &["n(n+2) is additive"]), 1),
        ),
        (
            "propagation",
            all_pass(&select(su2, &["recurrence from f(1)"]), 3),
        ),
    ])
}

fn criterion_6(sinsev: &SuiteReport) -> Outcome {
    combine(vec![
        (
            "residual",
            all_pass(
                &select(
                    sinsev,
                    &[
                        "Σ c_j ∂_j Q_x(λ) is an m_λ-sine function",
                        "coordinates ≤ 12",
                    ],
                ),
                3,
            ),
        ),
        (
            "fit",
            all_pass(&select(sinsev, &["fit_coefficients recovers c"]), 3),
        ),
    ])
}

fn criterion_7(sturm: &(SuiteReport, Duration)) -> Outcome {
    let (report, elapsed) = sturm;
    let mut o = combine(vec![
        (
            "A≡1 closed form",
            all_pass(&select(report, &["A≡1: Φ matches its closed form"]), 4),
        ),
        (
            "A=x² closed form",
            all_pass(
                &select(report, &["A=x^(2·0.5+1): Φ matches its closed form"]),
                4,
            ),
        ),
        (
            "∂_λΦ vs sine ODE",
            all_pass(&select(report, &["∂_λΦ solves the sine ODE"]), 8),
        ),
        (
            "homogeneous",
            all_pass(&select(report, &["zero data forces the zero solution"]), 8),
        ),
        (
            "A≡1 convolution",
            all_pass(&select(report, &["A≡1: ", "cosh(√λ·)"]), 8),
        ),
    ]);
    o.pass &= *elapsed < Duration::from_secs(10);
    o.detail = format!(
        "{}; suite time {:.2} s (limit 10 s)",
        o.detail,
        elapsed.as_secs_f64()
    );
    o
}

fn criterion_8(coset: &SuiteReport) -> Outcome {
    let dalembert = select(coset, &["α=1, λ=0: d'Alembert"]);
    let mut o = combine(vec![
        (
            "exponential",
            all_pass(&select(coset, &["|x|^λ is an exponential"]), 4),
        ),
        (
            "sine",
            all_pass(&select(coset, &["c|x|^λ ln|x| is an m_λ-sine function"]), 4),
        ),
        ("d'Alembert sample", all_pass(&dalembert, 1)),
        (
            "associativity",
            all_pass(&select(coset, &["associative (dyadic samples)"]), 1),
        ),
        (
            "non-normality",
            all_pass(&select(coset, &["K is not normal"]), 1),
        ),
    ]);
    if let Some(check) = dalembert.first() {
        o.detail = format!("{}; {}", o.detail, check.witness);
    }
    o
}

/// Worst `|dual − central difference| / (1 + |dual|)` over a parameter grid.
fn dual_vs_fd() -> (f64, String) {
    let h = 1e-5;
    let lambdas: Vec<Complex64> = (-3..=3)
        .flat_map(|i| (-2..=2).map(move |j| c(0.45 * i as f64 + 0.05, 0.4 * j as f64)))
        .collect();
    let mut worst = (0.0f64, String::new());
    let mut note = |family: &str, lambda: Complex64, d: Complex64, fd: Complex64| {
        let e = (d - fd).norm() / (1.0 + d.norm());
        if e > worst.0 || e.is_nan() {
            worst = (
                if e.is_nan() { f64::INFINITY } else { e },
                format!("{family} at λ={lambda}"),
            );
        }
    };
    for rec in [
        ThreeTermRecurrence::chebyshev(),
        ThreeTermRecurrence::legendre(),
    ] {
        for &lambda in &lambdas {
            for n in [1, 5, 17, 40] {
                let (_, d) = differentiate(|l: Dual| rec.eval_p(n, l).unwrap(), lambda);
                let fd = central_difference(|l| rec.eval_p(n, l).unwrap(), lambda, h);
                note(rec.name(), lambda, d, fd);
            }
        }
    }
    for &lambda in &lambdas {
        for n in [0, 1, 7, 40] {
            let (_, d) = differentiate(|l: Dual| su2_phi_scalar(n, l), lambda);
            let fd = central_difference(|l| su2_phi_scalar(n, l), lambda, h);
            note("su2", lambda, d, fd);
        }
    }
    let product = ProductPolyHypergroup::new(vec![
        ThreeTermRecurrence::chebyshev(),
        ThreeTermRecurrence::legendre(),
    ])
    .unwrap();
    for &lambda in &lambdas {
        let mu = c(0.3, -0.2);
        for x in [MultiIndex(vec![3, 4]), MultiIndex(vec![12, 1])] {
            let g = product.q_grad(&x, &[lambda, mu]).unwrap();
            let fd = central_difference(|l| product.q_eval(&x, &[l, mu]).unwrap(), lambda, h);
            note("product", lambda, g[0], fd);
        }
    }
    for &lambda in &lambdas {
        let m = |l: Complex64| {
            coset_exponential(l)
                .eval(&DoubleCoset::new(3.7, 1.0).unwrap())
                .unwrap()
        };
        let (_, d) = differentiate(|l: Dual| (l * 3.7f64.ln()).exp(), lambda);
        note("coset", lambda, d, central_difference(m, lambda, h));
    }
    for a in [
        SturmLiouvilleFunction::Constant,
        SturmLiouvilleFunction::power(0.5).unwrap(),
    ] {
        for lambda in [c(0.5, 0.0), c(1.0, 0.5), c(2.0, 0.0)] {
            for x in [0.5, 2.0, 5.0] {
                let d = closed_form(&a, x, lambda).unwrap().1;
                let fd = central_difference(|l| closed_form(&a, x, l).unwrap().0, lambda, h);
                note("half-line closed form", lambda, d, fd);
            }
            // The integrated family: dual-number RK4 against differences of RK4 solutions.
            let dual = dlambda_phi(&a, lambda, 5.0, 1e-3).unwrap();
            let plus = solve_phi(&a, lambda + h, 5.0, 1e-3).unwrap();
            let minus = solve_phi(&a, lambda - h, 5.0, 1e-3).unwrap();
            for i in (0..dual.grid.len()).step_by(250) {
                let fd = (plus.values[i] - minus.values[i]) / (2.0 * h);
                note("half-line ODE", lambda, dual.values[i], fd);
            }
        }
    }
    worst
}

fn criterion_9() -> Outcome {
    let (err, witness) = dual_vs_fd();
    let start = Instant::now();
    let first = run_suite(&SuiteConfig::new("all")).expect("valid");
    let elapsed = start.elapsed();
    let second = run_suite(&SuiteConfig::new("all")).expect("valid");
    let identical =
        first.to_json_without_timing().unwrap() == second.to_json_without_timing().unwrap();
    Outcome {
        pass: err <= 1e-6 && identical && first.pass && elapsed < Duration::from_secs(60),
        detail: format!(
            "dual vs central difference worst rel {err:.2e} ({witness}); verify all: {} checks, pass={}, \
             {:.2} s (limit 60 s), repeat run byte-identical={identical}",
            first.checks.len(),
            first.pass,
            elapsed.as_secs_f64()
        ),
    }
}

fn main() -> ExitCode {
    let polyone = run("polyone");
    let su2 = run("su2").0;
    let sinsev = run("sinsev").0;
    let sturm = run("sturm");
    let coset = run("coset").0;
    let compact = run("compact").0;
    let results = [
        ("polynomial sine functions (sufficiency), n,k ≤ 64, rel 1e-9, < 5 s", criterion_1(&polyone)),
        ("polynomial sine functions (necessity), 20 draws, rel 1e-9", criterion_2(&polyone)),
        ("D(θ): sine space {0}, exponentials (1, −θ) exact", criterion_3(&compact)),
        ("compact: power identity 1e-10, f·m = 0 on all supplied specs", criterion_4(&compact)),
        ("SU(2): convolution, weights, sine residual, additive, propagation", criterion_5(&su2)),
        ("product hypergroups d=2,3: sine residual and coefficient fit 1e-9", criterion_6(&sinsev)),
        ("half-line: closed forms 1e-6, ∂_λΦ 1e-5, uniqueness 1e-10, A≡1 convolution, < 10 s", criterion_7(&sturm)),
        ("double cosets: exponential 1e-12, sine 1e-10, d'Alembert sample, exact group identities", criterion_8(&coset)),
        ("dual numbers vs central differences 1e-6; verify all deterministic, < 60 s", criterion_9()),
    ];
    let mut ok = true;
    for (i, (title, outcome)) in results.iter().enumerate() {
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {}: {title} [{}]", i + 1, outcome.detail);
        ok &= outcome.pass;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
