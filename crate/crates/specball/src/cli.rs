//! Command-line front end.
//!
//! Exit codes: 0 success or inconclusive verdict, 3 infeasible verdict, 1 input error,
//! 2 numerical failure. Results go to standard output as JSON; `--verbose` adds a human
//! summary on standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use specball_core::symprod::{self, Domain, InducedMap};
use specball_core::{funcalc, isospec, nptest, spectra, Config, Error, HoloFunction, C64};

use crate::formats::{self, ConfigJson, DatasetJson, FormatError, FunctionJson, MatrixJson, SymPointJson};
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "specball", version, about = "Functional calculus and Pick-type tests on the spectral unit ball")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Print the JSON schemas of every input and output format and exit.
    #[arg(long, global = true)]
    schema: bool,

    /// Human-readable summary on standard error.
    #[arg(long, short, global = true)]
    verbose: bool,

    #[command(flatten)]
    overrides: Overrides,
}

/// Configuration sources; precedence is flag > file > default.
#[derive(Args, Debug, Default)]
struct Overrides {
    /// Configuration file (JSON object with any subset of the config fields).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    cluster_tol: Option<f64>,
    #[arg(long, global = true)]
    rank_tol: Option<f64>,
    #[arg(long, global = true)]
    verdict_margin: Option<f64>,
    #[arg(long, global = true)]
    pole_tol: Option<f64>,
    #[arg(long, global = true)]
    eps_boundary: Option<f64>,
    #[arg(long, global = true)]
    node_tol: Option<f64>,
    #[arg(long, global = true)]
    path_tol: Option<f64>,
    #[arg(long, global = true)]
    schwarz_tol: Option<f64>,
    #[arg(long, global = true)]
    oracle_max_n: Option<usize>,
    #[arg(long, global = true)]
    grid_points: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Two-point test on a dataset with two nodes.
    Check2 {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// Three-point test on a dataset with three nodes.
    Check3 {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        /// Also run the sampled variant on this many points of the circle of radius 1/2
        /// (experimental; on the disc it agrees with the plain test).
        #[arg(long, value_name = "COUNT")]
        z_samples: Option<usize>,
    },
    /// Predicted minimal polynomial of f(A) next to the brute-force one.
    Minpoly {
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        #[arg(long, value_name = "FILE")]
        function: PathBuf,
    },
    /// Evaluate f(A).
    Funcalc {
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        #[arg(long, value_name = "FILE")]
        function: PathBuf,
    },
    /// Eigenvalues with multiplicities and indices, minimal polynomial, spectral radius.
    Spectra {
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        /// Include the spectral projections.
        #[arg(long)]
        full: bool,
    },
    /// Sample the isospectral entire curve through A and report the deviation of its
    /// characteristic coefficients.
    Homotopy {
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        /// Samples per contour ([0,1], |z| = 1, |z| = 2); defaults to `grid_points`.
        #[arg(long, value_name = "COUNT")]
        samples: Option<usize>,
    },
    /// Apply the induced map of f to a point of the symmetrized product.
    Symmap {
        #[arg(long, value_name = "FILE")]
        point: PathBuf,
        #[arg(long, value_name = "FILE")]
        function: PathBuf,
        #[arg(long, value_enum, default_value_t = DomainArg::Disc)]
        domain: DomainArg,
    },
    /// Run the built-in invariant suite.
    Selftest {
        /// Randomized trials per check.
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DomainArg {
    Disc,
    Plane,
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    file: Option<PathBuf>,
    pointer: Option<String>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, kind: "input", message: message.into(), file: None, pointer: None }
    }

    fn format(file: &Path, e: FormatError) -> Self {
        Self {
            code: EXIT_INPUT,
            kind: "input",
            message: e.message,
            file: Some(file.to_path_buf()),
            pointer: Some(e.pointer),
        }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({"kind": self.kind, "message": self.message});
        if let Some(f) = &self.file {
            v["file"] = json!(f.display().to_string());
        }
        if let Some(p) = &self.pointer {
            v["pointer"] = json!(p);
        }
        json!({"error": v})
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Self { code: EXIT_NUMERICAL, kind: "numerical", message: e.to_string(), file: None, pointer: None }
        } else {
            Failure::input(e.to_string())
        }
    }
}

struct Output {
    json: Value,
    code: i32,
    summary: String,
}

impl Output {
    fn ok(json: Value, summary: String) -> Self {
        Self { json, code: EXIT_OK, summary }
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    if cli.schema {
        return emit(out, &formats::schemas(), EXIT_OK);
    }
    let Some(command) = cli.command else {
        let _ = writeln!(err, "no subcommand given; see `specball --help`");
        return EXIT_INPUT;
    };
    let result = load_config(&cli.overrides).and_then(|cfg| dispatch(command, &cfg));
    match result {
        Ok(o) => {
            if cli.verbose {
                let _ = writeln!(err, "{}", o.summary);
            }
            emit(out, &o.json, o.code)
        }
        Err(f) => {
            let _ = match (&f.file, &f.pointer) {
                (Some(file), Some(p)) if !p.is_empty() => writeln!(err, "error: {}: {} (at {p})", file.display(), f.message),
                (Some(file), _) => writeln!(err, "error: {}: {}", file.display(), f.message),
                _ => writeln!(err, "error: {}", f.message),
            };
            emit(out, &f.to_json(), f.code)
        }
    }
}

fn emit(out: &mut dyn Write, v: &Value, code: i32) -> i32 {
    match serde_json::to_writer_pretty(&mut *out, v).map(|_| writeln!(out)) {
        Ok(Ok(())) => code,
        _ => EXIT_INPUT,
    }
}

fn load_config(o: &Overrides) -> Result<Config, Failure> {
    let mut cfg = Config::default();
    if let Some(path) = &o.config {
        let file: ConfigJson = read_json(path)?;
        file.apply(&mut cfg);
    }
    let flags = ConfigJson {
        cluster_tol: o.cluster_tol,
        rank_tol: o.rank_tol,
        verdict_margin: o.verdict_margin,
        pole_tol: o.pole_tol,
        eps_boundary: o.eps_boundary,
        node_tol: o.node_tol,
        path_tol: o.path_tol,
        schwarz_tol: o.schwarz_tol,
        oracle_max_n: o.oracle_max_n,
        grid_points: o.grid_points,
        seed: o.seed,
        ..ConfigJson::default()
    };
    flags.apply(&mut cfg);
    cfg.validate()?;
    Ok(cfg)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    formats::decode(&read_text(path)?).map_err(|e| Failure::format(path, e))
}

fn read_function(path: &Path) -> Result<HoloFunction, Failure> {
    let json = FunctionJson::decode(&read_text(path)?).map_err(|e| Failure::format(path, e))?;
    located(path, json.to_function())
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Failure { file: Some(path.to_path_buf()), ..Failure::input(format!("cannot read: {e}")) })
}

fn located<T>(path: &Path, r: Result<T, FormatError>) -> Result<T, Failure> {
    r.map_err(|e| Failure::format(path, e))
}

fn dispatch(command: Command, cfg: &Config) -> Result<Output, Failure> {
    match command {
        Command::Check2 { input } => {
            let data = located(&input, read_json::<DatasetJson>(&input)?.to_data())?;
            verdict_output(nptest::check_two_point(&data, cfg)?, "two-point")
        }
        Command::Check3 { input, z_samples } => {
            let data = located(&input, read_json::<DatasetJson>(&input)?.to_data())?;
            let verdict = nptest::check_three_point(&data, cfg)?;
            let mut o = verdict_output(verdict, "three-point")?;
            if let Some(count) = z_samples {
                let zs: Vec<C64> = (0..count)
                    .map(|i| C64::from_polar(0.5, std::f64::consts::TAU * i as f64 / count.max(1) as f64))
                    .collect();
                let sampled = nptest::check_three_point_sampled(&data, &zs, cfg)?;
                o.json["sampled"] = json!(sampled
                    .iter()
                    .map(|(z, v)| json!({"z": [z.re, z.im], "verdict": formats::verdict_json(v)}))
                    .collect::<Vec<_>>());
            }
            Ok(o)
        }
        Command::Minpoly { matrix, function } => {
            let a = located(&matrix, read_json::<MatrixJson>(&matrix)?.to_matrix())?;
            let f = read_function(&function)?;
            let predicted = funcalc::predicted_minpoly(&f, &a, cfg)?;
            let oracle = spectra::minimal_polynomial_oracle(&funcalc::apply(&f, &a, cfg)?, cfg)?;
            let agree = predicted.poly.degree() == oracle.degree();
            let summary = format!(
                "predicted degree {:?}, brute-force degree {:?}{}",
                predicted.poly.degree(),
                oracle.degree(),
                if agree { "" } else { " (DISAGREE)" }
            );
            Ok(Output::ok(
                json!({
                    "predicted": formats::predicted_json(&predicted),
                    "oracle": formats::poly_json(&oracle),
                    "degrees_agree": agree,
                }),
                summary,
            ))
        }
        Command::Funcalc { matrix, function } => {
            let a = located(&matrix, read_json::<MatrixJson>(&matrix)?.to_matrix())?;
            let f = read_function(&function)?;
            let fa = funcalc::apply(&f, &a, cfg)?;
            let summary = format!("f(A): {}x{}, Frobenius norm {:.6e}", fa.n(), fa.n(), fa.frobenius_norm());
            Ok(Output::ok(json!({ "matrix": MatrixJson::from_matrix(&fa) }), summary))
        }
        Command::Spectra { matrix, full } => {
            let a = located(&matrix, read_json::<MatrixJson>(&matrix)?.to_matrix())?;
            let sd = spectra::spectral_data(&a, cfg)?;
            let mut json = formats::spectral_json(&sd, full);
            json["minimal_polynomial"] = formats::poly_json(&sd.minimal_polynomial());
            json["spectral_radius"] = json!(spectra::spectral_radius(&a, cfg)?);
            let summary = sd
                .eigs
                .iter()
                .map(|e| format!("{:.6} (alg {}, index {})", e.value, e.alg_mult, e.index))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::ok(json, summary))
        }
        Command::Homotopy { matrix, samples } => {
            let a = located(&matrix, read_json::<MatrixJson>(&matrix)?.to_matrix())?;
            let path = isospec::isospectral_path(&a, cfg)?;
            let zs = isospec::path_samples(samples.unwrap_or(cfg.grid_points).max(2));
            let report = isospec::verify_path(&path, &zs, cfg)?;
            let passed = report.passed(cfg);
            let summary = format!(
                "{} samples, max chi deviation {:.3e} (bound {:.3e}), |f(1) - A| = {:.3e}",
                report.samples.len(),
                report.max_deviation,
                report.bound,
                report.endpoint_error
            );
            let code = if passed { EXIT_OK } else { EXIT_NUMERICAL };
            Ok(Output { json: formats::path_json(&report, passed), code, summary })
        }
        Command::Symmap { point, function, domain } => {
            let x = located(&point, read_json::<SymPointJson>(&point)?.to_point())?;
            let f = read_function(&function)?;
            let domain = match domain {
                DomainArg::Disc => Domain::Disc,
                DomainArg::Plane => Domain::Plane,
            };
            let map = InducedMap::new(f, x.n(), domain);
            let y = symprod::sigma_n_phi(&map, &x, cfg)?;
            let summary = format!("mapped a point of the {}-fold symmetric product", x.n());
            Ok(Output::ok(json!(SymPointJson::from_point(&y)), summary))
        }
        Command::Selftest { trials } => {
            let report = selftest::run(trials, cfg);
            let passed = report.iter().all(|c| c.passed);
            let summary = report
                .iter()
                .map(|c| format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({
                "passed": passed,
                "checks": report.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
            });
            Ok(Output { json, code: if passed { EXIT_OK } else { EXIT_NUMERICAL }, summary })
        }
    }
}

fn verdict_output(v: specball_core::Verdict, label: &str) -> Result<Output, Failure> {
    let summary = match &v.witness {
        specball_core::nptest::Witness::TwoPoint(w) => {
            format!("{label}: {:?}, lhs {:.12} vs rhs {:.12} (margin {:e})", v.status, w.lhs, w.rhs, w.margin)
        }
        specball_core::nptest::Witness::ThreePoint(w) => match w.refuting_k {
            Some(k) => format!("{label}: {:?}, refuted at k = {} (0-based)", v.status, k),
            None => format!("{label}: {:?}", v.status),
        },
    };
    let code = if v.is_infeasible() { EXIT_INFEASIBLE } else { EXIT_OK };
    Ok(Output { json: formats::verdict_json(&v), code, summary })
}
