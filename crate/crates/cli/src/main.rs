use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hypersine::finite::{
    compact_vanishing_check, find_exponentials, sine_space, FiniteHypergroupSpec,
};
use hypersine_cli::config::{parse_complex, SuiteConfig, DEFAULT_SAMPLES, DEFAULT_SEED, SUITES};
use hypersine_cli::tabulate::{self, TabulateConfig, FAMILIES};
use hypersine_cli::{run_suite, CliError};
use num_complex::Complex64;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "hypersine",
    version,
    about = "Sine functions on hypergroups: verification suites and tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite (or `all`) and report every check.
    Verify {
        suite: String,
        /// Replaces the tolerance of every upper-bound check.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Parameter `re` or `re,im`; repeat for a list.
        #[arg(long = "lambda", allow_hyphen_values = true)]
        lambdas: Vec<String>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = hypersine::sturm::DEFAULT_XMAX)]
        xmax: f64,
        #[arg(long, default_value_t = hypersine::sturm::DEFAULT_STEP)]
        h: f64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        /// Use A ≡ 1 in the Sturm–Liouville suite.
        #[arg(long)]
        a_const: bool,
        /// JSON recurrence file for the polyone suite.
        #[arg(long)]
        recurrence: Option<PathBuf>,
        /// Extra finite hypergroup specs for the compact suite.
        #[arg(long = "spec")]
        specs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Tabulate m and c ∂_λ m for a family.
    Tabulate {
        family: String,
        #[arg(long, default_value = "0.5", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value_t = 0)]
        n_min: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long)]
        recurrence: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long)]
        a_const: bool,
        #[arg(long, default_value_t = hypersine::sturm::DEFAULT_XMAX)]
        xmax: f64,
        #[arg(long, default_value_t = hypersine::sturm::DEFAULT_STEP)]
        h: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Exponentials and sine spaces of a finite hypergroup given as JSON.
    SineSpace {
        spec: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List suites and tabulation families.
    List,
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

#[derive(Serialize)]
struct ComplexOut {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct ExponentialOut {
    m: Vec<ComplexOut>,
    sine_space_dimension: usize,
    sine_basis: Vec<Vec<ComplexOut>>,
    vanishing: bool,
}

#[derive(Serialize)]
struct SineSpaceOut {
    name: String,
    size: usize,
    exponentials: Vec<ExponentialOut>,
}

fn cvec(v: &[Complex64]) -> Vec<ComplexOut> {
    v.iter()
        .map(|z| ComplexOut { re: z.re, im: z.im })
        .collect()
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify {
            suite,
            tol,
            seed,
            lambdas,
            n_max,
            xmax,
            h,
            samples,
            theta,
            alpha,
            a_const,
            recurrence,
            specs,
            out,
            format,
        } => {
            let cfg = SuiteConfig {
                suite,
                seed,
                tol,
                lambdas: lambdas
                    .iter()
                    .map(|s| parse_complex(s))
                    .collect::<Result<_, _>>()?,
                n_max,
                x_max: xmax,
                h,
                samples,
                theta,
                alpha,
                a_const,
                recurrence,
                specs,
            };
            let report = run_suite(&cfg)?;
            let mut w = sink(&out)?;
            match format {
                Format::Json => writeln!(w, "{}", report.to_json()?)?,
                Format::Csv => report.write_csv(&mut w)?,
            }
            w.flush()?;
            let failed = report.failures().count();
            for f in report.failures() {
                eprintln!("FAIL [{}] {}: {}", f.suite, f.check, f.witness);
            }
            eprintln!(
                "{}: {} checks, {} failed, {} ms",
                report.suite,
                report.checks.len(),
                failed,
                report.wall_time_ms
            );
            Ok(report.pass)
        }
        Command::Tabulate {
            family,
            lambda,
            c,
            n_min,
            n_max,
            recurrence,
            alpha,
            a_const,
            xmax,
            h,
            out,
            format,
        } => {
            let cfg = TabulateConfig {
                family,
                lambda: parse_complex(&lambda)?,
                c: parse_complex(&c)?,
                n_min,
                n_max,
                recurrence,
                alpha,
                a_const,
                x_max: xmax,
                h,
            };
            let rows = tabulate::tabulate(&cfg)?;
            let mut w = sink(&out)?;
            match format {
                Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&rows)?)?,
                Format::Csv => tabulate::write_csv(&rows, &mut w)?,
            }
            w.flush()?;
            Ok(true)
        }
        Command::SineSpace { spec, tol, out } => {
            if !(tol > 0.0) {
                return Err(CliError::Usage(format!(
                    "--tol must be positive, got {tol}"
                )));
            }
            let spec = FiniteHypergroupSpec::load(&spec)
                .map_err(|e| CliError::Config(format!("{}: {e}", spec.display())))?;
            let mut exponentials = Vec::new();
            for m in find_exponentials(&spec, 1e-10)? {
                let basis = sine_space(&spec, &m, tol)?;
                let vanishing = compact_vanishing_check(&spec, &m, &basis, 1e-10);
                exponentials.push(ExponentialOut {
                    m: cvec(&m),
                    sine_space_dimension: basis.len(),
                    sine_basis: basis.iter().map(|f| cvec(f.values())).collect(),
                    vanishing,
                });
            }
            let all_vanish = exponentials.iter().all(|e| e.vanishing);
            let result = SineSpaceOut {
                name: spec.name.clone(),
                size: spec.size,
                exponentials,
            };
            let mut w = sink(&out)?;
            writeln!(w, "{}", serde_json::to_string_pretty(&result)?)?;
            w.flush()?;
            Ok(all_vanish)
        }
        Command::List => {
            println!("suites: {} all", SUITES.join(" "));
            println!("tabulate families: {}", FAMILIES.join(" "));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
