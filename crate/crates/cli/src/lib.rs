//! Verification suites, tabulation and report plumbing behind the
//! `hypersine` binary.

pub mod config;
pub mod report;
mod suites;
pub mod tabulate;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use config::{SuiteConfig, SUITES};
pub use report::{Check, Criterion, SuiteReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] hypersine::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for bad input, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

/// Runs one suite, or all of them in [`SUITES`] order for `"all"`.
///
/// Each suite draws from its own ChaCha8 stream seeded with
/// `seed + position in SUITES`, so a suite gives the same numbers whether it
/// runs alone or inside `all`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport, CliError> {
    cfg.validate()?;
    let start = Instant::now();
    let names: Vec<&str> = if cfg.suite == "all" {
        SUITES.to_vec()
    } else {
        vec![cfg.suite.as_str()]
    };
    let mut checks = Vec::new();
    for name in names {
        let index = SUITES
            .iter()
            .position(|s| *s == name)
            .expect("validated suite name");
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(index as u64));
        checks.extend(suites::dispatch(name, cfg, &mut rng)?);
    }
    let ms = start.elapsed().as_millis() as u64;
    Ok(SuiteReport::new(&cfg.suite, cfg.seed, checks, ms))
}
