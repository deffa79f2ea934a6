//! Command-line front end. `run` does all the work so it can be driven from
//! tests; the binary only forwards `argv`, `RC_SEED` and the process streams.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::exactalg::format_rational;
use crate::fourier::{
    apply_bracket, is_cusp_supported, weight_condition, FourierError, FourierSeries, SeriesDefaults, Truncation,
};
use crate::generators::q_generators;
use crate::solver::{assemble_bracket, solve_coefficients, IndexTuple, Normalization, SolverError};
use crate::verify::{dimension_basis, run_suite, Suite, VerifyError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hermrc", version, about = "Rankin-Cohen type brackets for Hermitian modular forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve the bracket coefficients for (n, v, k1, k2).
    Bracket(BracketArgs),
    /// Run a verification suite against the solved bracket.
    Verify(VerifyArgs),
    /// Apply the bracket to two Fourier series files.
    Apply(ApplyArgs),
    /// Certify the dimension of the degree-v space.
    Dim(DimArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Unit,
    Integral,
}

impl From<NormArg> for Normalization {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::Unit => Normalization::Unit,
            NormArg::Integral => Normalization::Integral,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Fast,
    Full,
}

#[derive(Args, Debug)]
pub struct Params {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long)]
    pub v: u32,
    #[arg(long)]
    pub k1: i64,
    #[arg(long)]
    pub k2: i64,
}

#[derive(Args, Debug)]
pub struct BracketArgs {
    #[command(flatten)]
    pub params: Params,
    #[arg(long, value_enum, default_value = "integral")]
    pub normalization: NormArg,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Field parameter of Q(sqrt(-d)); adds the weight-condition advisory.
    #[arg(long)]
    pub d: Option<u64>,
    /// Include the expanded polynomial in w[i,j], z[i,j].
    #[arg(long)]
    pub expand: bool,
    #[arg(long)]
    pub show_generators: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub params: Params,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "fast")]
    pub suite: SuiteArg,
}

#[derive(Args, Debug)]
pub struct ApplyArgs {
    #[arg(long)]
    pub f1: PathBuf,
    #[arg(long)]
    pub f2: PathBuf,
    #[arg(long)]
    pub v: u32,
    #[arg(long)]
    pub k1: i64,
    #[arg(long)]
    pub k2: i64,
    #[arg(long, value_enum, default_value = "unit")]
    pub normalization: NormArg,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DimArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long)]
    pub v: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub show_generators: bool,
}

/// Single-line failure: `error[<reason>]: <message>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub reason: &'static str,
    pub message: String,
    pub exit: i32,
}

impl CliError {
    fn usage(reason: &'static str, message: impl Into<String>) -> Self {
        Self { reason, message: message.into(), exit: EXIT_USAGE }
    }

    fn input(reason: &'static str, message: impl Into<String>) -> Self {
        Self { reason, message: message.into(), exit: EXIT_INPUT }
    }

    pub fn line(&self) -> String {
        format!("error[{}]: {}", self.reason, self.message.replace('\n', " "))
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        let reason = match e {
            SolverError::WeightBelowMatrixSize { .. } => "weight_below_matrix_size",
            _ => "invalid_parameters",
        };
        CliError::usage(reason, e.to_string())
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Solver(s) => s.into(),
            VerifyError::WeightBelowSize { .. } => CliError::usage("weight_below_matrix_size", e.to_string()),
            other => CliError::usage("invalid_parameters", other.to_string()),
        }
    }
}

impl From<FourierError> for CliError {
    fn from(e: FourierError) -> Self {
        let reason = match e {
            FourierError::Schema(_) | FourierError::Alg(_) | FourierError::MissingWeight => "schema",
            FourierError::NotHermitian(_) => "not_hermitian",
            FourierError::NotPsd(_) => "not_psd",
            FourierError::WeightMismatch { .. } => "weight_mismatch",
            FourierError::SizeMismatch(..) | FourierError::FieldMismatch(..) => "metadata_mismatch",
            FourierError::NonReal(_) => "non_real",
        };
        CliError::input(reason, e.to_string())
    }
}

struct Outcome {
    stdout: String,
    stderr: String,
    exit: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), exit: EXIT_OK }
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
/// `rc_seed` is the value of `RC_SEED`, which overrides `--seed`.
pub fn run<I, T>(argv: I, rc_seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                let _ = writeln!(
                    err,
                    "{}",
                    CliError::usage("usage", "missing subcommand (bracket, verify, apply, dim)").line()
                );
                return EXIT_USAGE;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            let _ = writeln!(err, "{}", CliError::usage("usage", first).line());
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, rc_seed) {
        Ok(o) => {
            let _ = out.write_all(o.stdout.as_bytes());
            let _ = err.write_all(o.stderr.as_bytes());
            o.exit
        }
        Err(e) => {
            let _ = writeln!(err, "{}", e.line());
            e.exit
        }
    }
}

fn dispatch(cmd: Command, rc_seed: Option<&str>) -> Result<Outcome, CliError> {
    let seed_override = rc_seed
        .map(|s| {
            s.trim().parse::<u64>().map_err(|_| CliError::usage("usage", format!("RC_SEED is not an integer: {s:?}")))
        })
        .transpose()?;
    match cmd {
        Command::Bracket(a) => run_bracket(&a),
        Command::Verify(a) => run_verify(&a, seed_override),
        Command::Apply(a) => run_apply(&a),
        Command::Dim(a) => run_dim(&a, seed_override),
    }
}

fn emit(text: String, output: &Option<PathBuf>) -> Result<String, CliError> {
    match output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::input("io", format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn run_bracket(a: &BracketArgs) -> Result<Outcome, CliError> {
    let p = &a.params;
    let n = p.n as usize;
    let bc = solve_coefficients(n, p.v, p.k1, p.k2, a.normalization.into())?;
    let gens = q_generators(n).map_err(|e| CliError::usage("invalid_parameters", e.to_string()))?;
    let advisory = a.d.map(|d| weight_condition(d, p.v));
    let poly = if a.expand { Some(assemble_bracket(&bc, &gens)?) } else { None };

    let text = match a.format {
        Format::Json => {
            let mut value = bc.to_json_value();
            let obj = value.as_object_mut().expect("bracket json is an object");
            if let Some(w) = &advisory {
                obj.insert("weight_condition".into(), serde_json::to_value(w).expect("plain data"));
            }
            if a.show_generators {
                let g: Vec<String> = gens.polys.iter().map(ToString::to_string).collect();
                obj.insert("generators".into(), json!(g));
            }
            if let Some(q) = &poly {
                obj.insert("polynomial".into(), json!(q.to_string()));
            }
            format!("{value}\n")
        }
        Format::Text => {
            let mut s = bc.to_text();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            if let Some(w) = &advisory {
                s.push_str(&format!(
                    "weight condition (d={}): divisor {} {} v={}\n",
                    w.d,
                    w.required_divisor,
                    if w.satisfied { "divides" } else { "does not divide" },
                    w.v
                ));
            }
            if a.show_generators {
                for (i, g) in gens.polys.iter().enumerate() {
                    s.push_str(&format!("Q{i} = {g}\n"));
                }
            }
            if let Some(q) = &poly {
                s.push_str(&format!("Q = {q}\n"));
            }
            s
        }
    };
    Ok(Outcome::ok(emit(text, &a.output)?))
}

fn run_verify(a: &VerifyArgs, seed_override: Option<u64>) -> Result<Outcome, CliError> {
    let p = &a.params;
    let seed = seed_override.unwrap_or(a.seed);
    let suite = match a.suite {
        SuiteArg::Fast => Suite::Fast,
        SuiteArg::Full => Suite::Full,
    };
    let reports = run_suite(p.n as usize, p.v, p.k1, p.k2, seed, suite)?;
    let mut stdout = String::new();
    for r in &reports {
        stdout.push_str(&r.to_json_line());
        stdout.push('\n');
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.check.as_str()).collect();
    if failed.is_empty() {
        Ok(Outcome::ok(stdout))
    } else {
        let stderr = format!("error[verification_failed]: {}\n", failed.join(","));
        Ok(Outcome { stdout, stderr, exit: EXIT_VERIFY_FAILED })
    }
}

fn read_series(path: &PathBuf, weight: i64) -> Result<FourierSeries, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input("io", format!("{}: {e}", path.display())))?;
    let series =
        FourierSeries::from_json_str(&text, SeriesDefaults { weight: Some(weight), d: None }).map_err(|e| {
            let mut c = CliError::from(e);
            c.message = format!("{}: {}", path.display(), c.message);
            c
        })?;
    if series.weight != weight {
        return Err(CliError::input(
            "weight_mismatch",
            format!("{}: weight {} does not match flag {}", path.display(), series.weight, weight),
        ));
    }
    Ok(series)
}

fn run_apply(a: &ApplyArgs) -> Result<Outcome, CliError> {
    let f1 = read_series(&a.f1, a.k1)?;
    let f2 = read_series(&a.f2, a.k2)?;
    let bc = solve_coefficients(f1.n, a.v, a.k1, a.k2, a.normalization.into())?;
    let g = apply_bracket(&f1, &f2, &bc)?;
    let window = match &g.truncation {
        Truncation::Complete => "complete".to_string(),
        Truncation::TraceAtMost(b) => format!("trace<={}", format_rational(b)),
    };
    let summary = format!(
        "cusp_supported={} support={} weight={} window={}\n",
        is_cusp_supported(&g),
        g.support_len(),
        g.weight,
        window
    );
    let body = emit(format!("{}\n", g.to_json_string()), &a.output)?;
    Ok(if body.is_empty() { Outcome::ok(summary) } else { Outcome { stdout: body, stderr: summary, exit: EXIT_OK } })
}

fn run_dim(a: &DimArgs, seed_override: Option<u64>) -> Result<Outcome, CliError> {
    let n = a.n as usize;
    let seed = seed_override.unwrap_or(a.seed);
    let report = dimension_basis(n, a.v, seed)?;
    let mut stdout = format!("{}\n", report.to_json_line());
    if a.show_generators {
        let gens = q_generators(n).map_err(|e| CliError::usage("invalid_parameters", e.to_string()))?;
        for (i, g) in gens.polys.iter().enumerate() {
            stdout.push_str(&format!("Q{i} = {g}\n"));
        }
        for alpha in IndexTuple::enumerate(n, a.v) {
            stdout.push_str(&format!("{alpha}\n"));
        }
    }
    if report.passed() {
        Ok(Outcome::ok(stdout))
    } else {
        Ok(Outcome { stdout, stderr: "error[verification_failed]: dimension_basis\n".into(), exit: EXIT_VERIFY_FAILED })
    }
}
