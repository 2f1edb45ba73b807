use std::path::PathBuf;

use num_complex::Complex64;
use serde::Serialize;

use crate::CliError;

/// Suites runnable by name; `all` runs each of them in this order.
pub const SUITES: [&str; 6] = ["polyone", "su2", "sinsev", "sturm", "coset", "compact"];

pub const DEFAULT_SEED: u64 = 20_240_917;
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub suite: String,
    pub seed: u64,
    /// Replaces the built-in tolerance of every upper-bound check.
    pub tol: Option<f64>,
    /// Empty means the suite's own parameter list.
    pub lambdas: Vec<Complex64>,
    pub n_max: Option<usize>,
    pub x_max: f64,
    pub h: f64,
    pub samples: usize,
    pub theta: Option<f64>,
    pub alpha: Option<f64>,
    pub a_const: bool,
    pub recurrence: Option<PathBuf>,
    pub specs: Vec<PathBuf>,
}

impl SuiteConfig {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            seed: DEFAULT_SEED,
            tol: None,
            lambdas: Vec::new(),
            n_max: None,
            x_max: hypersine::sturm::DEFAULT_XMAX,
            h: hypersine::sturm::DEFAULT_STEP,
            samples: DEFAULT_SAMPLES,
            theta: None,
            alpha: None,
            a_const: false,
            recurrence: None,
            specs: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        if self.suite != "all" && !SUITES.contains(&self.suite.as_str()) {
            return usage(format!(
                "unknown suite {:?}; expected one of {} or all",
                self.suite,
                SUITES.join(", ")
            ));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return usage(format!("tolerance must be positive, got {t}"));
            }
        }
        if !(self.x_max > 0.0 && self.x_max.is_finite()) {
            return usage(format!("--xmax must be positive, got {}", self.x_max));
        }
        if !(self.h > 0.0 && self.h < self.x_max) {
            return usage(format!("--h must lie in (0, xmax), got {}", self.h));
        }
        if self.samples == 0 {
            return usage("--samples must be at least 1".into());
        }
        if self.n_max == Some(0) {
            return usage("--n-max must be at least 1".into());
        }
        if let Some(t) = self.theta {
            if !(t > 0.0 && t < 1.0) {
                return usage(format!("--theta must lie in (0, 1), got {t}"));
            }
        }
        if let Some(a) = self.alpha {
            if !(a >= -0.5 && a.is_finite()) {
                return usage(format!("--alpha must be at least -0.5, got {a}"));
            }
        }
        if self.alpha.is_some() && self.a_const {
            return usage("--alpha and --a-const are mutually exclusive".into());
        }
        if let Some(l) = self.lambdas.iter().find(|l| !l.is_finite()) {
            return usage(format!("λ must be finite, got {l}"));
        }
        Ok(())
    }

    /// The suite's own tolerance unless overridden.
    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    pub fn lambdas_or(&self, defaults: &[Complex64]) -> Vec<Complex64> {
        if self.lambdas.is_empty() {
            defaults.to_vec()
        } else {
            self.lambdas.clone()
        }
    }
}

/// Parses `re` or `re,im`.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "cannot parse {s:?} as a complex number; use re or re,im"
        ))
    };
    let mut parts = s.split(',').map(str::trim);
    let re: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(p) => p.parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// `0.5+0.2i`, `1`, `-0.3i`; used in check names.
pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
