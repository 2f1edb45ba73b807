//! Value tables of an exponential and one of its sine functions.

use std::io::Write;
use std::path::PathBuf;

use hypersine::poly::{sine_fn, PolyExponential, PolynomialHypergroup, ThreeTermRecurrence};
use hypersine::residual::sine_residual;
use hypersine::sturm::{solve_phi, solve_sine, SturmLiouvilleFunction};
use hypersine::su2::{Su2Exponential, Su2Hypergroup, Su2Sine};
use hypersine::{Hypergroup, HypergroupFn};
use num_complex::Complex64;
use serde::Serialize;

use crate::CliError;

pub const FAMILIES: [&str; 5] = ["chebyshev", "legendre", "recurrence", "su2", "sturm"];

#[derive(Clone, Debug)]
pub struct TabulateConfig {
    pub family: String,
    pub lambda: Complex64,
    /// Scale of the sine function `c ∂_λ m`.
    pub c: Complex64,
    pub n_min: usize,
    pub n_max: usize,
    pub recurrence: Option<PathBuf>,
    pub alpha: Option<f64>,
    pub a_const: bool,
    pub x_max: f64,
    pub h: f64,
}

impl TabulateConfig {
    pub fn new(family: impl Into<String>) -> Self {
        Self {
            family: family.into(),
            lambda: Complex64::new(0.5, 0.0),
            c: Complex64::new(1.0, 0.0),
            n_min: 0,
            n_max: 10,
            recurrence: None,
            alpha: None,
            a_const: false,
            x_max: hypersine::sturm::DEFAULT_XMAX,
            h: hypersine::sturm::DEFAULT_STEP,
        }
    }
}

/// One table row. On ℕ the residual is that of the sine equation at the pair
/// `(n, 1)`; on the half-line it is the finite-difference ODE residual of the
/// sine function at the node.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub element: String,
    pub m_re: f64,
    pub m_im: f64,
    pub sine_re: f64,
    pub sine_im: f64,
    pub residual: f64,
}

fn row(element: String, m: Complex64, sine: Complex64, residual: f64) -> Row {
    Row {
        element,
        m_re: m.re,
        m_im: m.im,
        sine_re: sine.re,
        sine_im: sine.im,
        residual,
    }
}

fn discrete_rows<H, F, M>(
    hg: &H,
    f: &F,
    m: &M,
    range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<Row>, CliError>
where
    H: Hypergroup<Element = usize>,
    F: HypergroupFn<usize>,
    M: HypergroupFn<usize>,
{
    range
        .map(|n| {
            let r = sine_residual(hg, f, m, &[(n, 1)])?;
            Ok(row(n.to_string(), m.eval(&n)?, f.eval(&n)?, r.max_abs))
        })
        .collect()
}

pub fn tabulate(cfg: &TabulateConfig) -> Result<Vec<Row>, CliError> {
    if !cfg.lambda.is_finite() || !cfg.c.is_finite() {
        return Err(CliError::Usage("λ and c must be finite".into()));
    }
    let range = cfg.n_min..=cfg.n_max;
    let poly = |rec: ThreeTermRecurrence| {
        if let Some(d) = rec.max_degree() {
            if cfg.n_max >= d {
                return Err(CliError::Config(format!(
                    "recurrence {} covers degrees below {d}; the residual at (n, 1) needs n + 1 ≤ {d}",
                    rec.name()
                )));
            }
        }
        let f = sine_fn(&rec, cfg.c, cfg.lambda);
        let m = PolyExponential::new(&rec, cfg.lambda);
        discrete_rows(&PolynomialHypergroup::new(rec), &f, &m, range.clone())
    };
    match cfg.family.as_str() {
        "chebyshev" => poly(ThreeTermRecurrence::chebyshev()),
        "legendre" => poly(ThreeTermRecurrence::legendre()),
        "recurrence" => {
            let path = cfg.recurrence.as_ref().ok_or_else(|| {
                CliError::Usage("family recurrence needs --recurrence <file>".into())
            })?;
            let rec = ThreeTermRecurrence::load(path)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            poly(rec)
        }
        "su2" => {
            let f = Su2Sine {
                scale: cfg.c,
                lambda: cfg.lambda,
            };
            let m = Su2Exponential { lambda: cfg.lambda };
            discrete_rows(&Su2Hypergroup, &f, &m, range)
        }
        "sturm" => {
            let a = match (cfg.a_const, cfg.alpha) {
                (true, Some(_)) => {
                    return Err(CliError::Usage(
                        "--alpha and --a-const are mutually exclusive".into(),
                    ))
                }
                (_, Some(alpha)) => SturmLiouvilleFunction::power(alpha)
                    .map_err(|e| CliError::Usage(e.to_string()))?,
                _ => SturmLiouvilleFunction::Constant,
            };
            if !(cfg.x_max > 0.0 && cfg.h > 0.0 && cfg.h < cfg.x_max) {
                return Err(CliError::Usage(format!(
                    "need 0 < h < xmax, got h = {}, xmax = {}",
                    cfg.h, cfg.x_max
                )));
            }
            let phi = solve_phi(&a, cfg.lambda, cfg.x_max, cfg.h)?;
            let f = solve_sine(&a, cfg.lambda, cfg.c, cfg.x_max, cfg.h)?;
            Ok((0..f.grid.len())
                .map(|i| {
                    row(
                        format!("{}", f.grid[i]),
                        phi.values[i],
                        f.values[i],
                        f.residuals[i],
                    )
                })
                .collect())
        }
        other => Err(CliError::Usage(format!(
            "unknown family {other:?}; expected one of {}",
            FAMILIES.join(", ")
        ))),
    }
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(["element", "m_re", "m_im", "sine_re", "sine_im", "residual"])?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_at_one_gives_squares() {
        let mut cfg = TabulateConfig::new("chebyshev");
        cfg.lambda = Complex64::new(1.0, 0.0);
        cfg.n_max = 5;
        let sine: Vec<f64> = tabulate(&cfg).unwrap().iter().map(|r| r.sine_re).collect();
        for (n, v) in sine.iter().enumerate() {
            assert!((v - (n * n) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_range() {
        let mut cfg = TabulateConfig::new("su2");
        cfg.n_min = 4;
        cfg.n_max = 3;
        assert!(tabulate(&cfg).unwrap().is_empty());
        let mut out = Vec::new();
        write_csv(&[], &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap().trim(),
            "element,m_re,m_im,sine_re,sine_im,residual"
        );
    }
}
