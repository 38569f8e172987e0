//! The `knotinv` command line.
//!
//! Exit codes: 0 on success, 2 for input that cannot be read or parsed,
//! 3 when the input is well formed but a mathematical hypothesis fails
//! (Alexander polynomial vanishing at ±1, coprimality, sign hypothesis, ...).
//! Internal consistency failures exit with 1.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decompose::{
    diagonalize, elementary_diagonal, glue_with_tolerance, minimal_diagonal, DiagonalForm, DiagonalFormJson,
    EntryJson, GlueResult, NORM_TOLERANCE,
};
use crate::hermat::{HermitianLaurentMatrix, MatrixJson};
use crate::invariants::{knot_summary, plot_samples, KnotReport};
use crate::laurent::LaurentPoly;
use crate::seifert::{SeifertJson, SeifertMatrix};
use crate::Error;

/// Report written by `analyze` and, per row, by `batch`.
pub type AnalysisReport = KnotReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Relative residual bound for norm factors.
    pub norm_tolerance: f64,
    /// Uniform samples in the plot CSV, in addition to the roots.
    pub plot_samples: usize,
    pub jobs: Option<usize>,
    pub format: Format,
    /// Record wall-clock time in reports. Off by default so that reports
    /// are byte-stable.
    pub timing: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config { norm_tolerance: NORM_TOLERANCE, plot_samples: 512, jobs: None, format: Format::Json, timing: false }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.norm_tolerance > 0.0) {
            return Err(CliError::usage("tolerance must be positive"));
        }
        if self.plot_samples < 2 {
            return Err(CliError::usage("plot sample count must be at least 2"));
        }
        if self.jobs == Some(0) {
            return Err(CliError::usage("--jobs must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(name = "knotinv", version, about = "Signature profiles and Blanchfield form dimension of knots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Residual tolerance for norm factors.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// JSON configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants of one knot given by a Seifert matrix JSON file.
    Analyze {
        #[arg(conflicts_with = "input")]
        path: Option<PathBuf>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Write `x,sigma,eta` step samples over the full turn.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// One knot per line, `name;[[a,b],[c,d]]`.
    Batch {
        #[arg(conflicts_with = "input")]
        path: Option<PathBuf>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, env = "KNOTINV_JOBS")]
        jobs: Option<usize>,
    },
    /// Minimal diagonal form of a hermitian matrix, a diagonal form, or a
    /// list of diagonal entries.
    Diagonalize {
        #[arg(conflicts_with = "input")]
        path: Option<PathBuf>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Replace `diag(A, B)` by `ε A B`.
    Glue {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
}

/// An error with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError { code: 2, kind: "Usage".into(), message: msg.into() }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError { code: 2, kind: "Io".into(), message: format!("{}: {e}", path.display()) }
    }

    fn json(e: serde_json::Error) -> Self {
        CliError { code: 2, kind: "Parse".into(), message: e.to_string() }
    }

    fn to_json(&self) -> String {
        serde_json::json!({ "error": self.kind, "message": self.message }).to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError { code: exit_code(&e), kind: e.kind().into(), message: e.to_string() }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::NotPalindromic(_)
        | Error::NotOnCircle(_)
        | Error::NotSeifert(_)
        | Error::NotNormalized
        | Error::NotHermitian
        | Error::DimensionMismatch(_)
        | Error::NotElementary(_)
        | Error::EmptyArc
        | Error::NotARoot
        | Error::NotUnimodular
        | Error::NotUnitBlock(_) => 2,
        Error::Internal(_) => 1,
        _ => 3,
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::io(path, e))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn pick(path: Option<PathBuf>, input: Option<PathBuf>) -> Result<PathBuf, CliError> {
    path.or(input).ok_or_else(|| CliError::usage("no input file given"))
}

fn load_config(cli: &Cli) -> Result<Config, CliError> {
    let mut config = match &cli.config {
        Some(p) => serde_json::from_str(&read_input(p)?).map_err(CliError::json)?,
        None => Config::default(),
    };
    if let Some(f) = cli.format {
        config.format = f;
    }
    if let Some(t) = cli.tolerance {
        config.norm_tolerance = t;
    }
    config.validate()?;
    Ok(config)
}

/// Analyze one Seifert matrix.
pub fn analyze_matrix(v: &SeifertMatrix, config: &Config) -> crate::Result<(AnalysisReport, Vec<(f64, i64, usize)>)> {
    let start = Instant::now();
    let k = knot_summary(v)?;
    let mut report = KnotReport::from_analysis(&k);
    if config.timing {
        report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok((report, plot_samples(&k.profile, config.plot_samples)))
}

/// Plot CSV with header `x,sigma,eta`.
pub fn plot_csv(rows: &[(f64, i64, usize)]) -> String {
    let mut out = String::from("x,sigma,eta\n");
    for (x, s, e) in rows {
        out.push_str(&format!("{x},{s},{e}\n"));
    }
    out
}

/// One row of the batch summary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub name: String,
    pub mu: usize,
    pub eta: usize,
    pub n_r: usize,
    pub lower_bound: usize,
}

impl SummaryRow {
    fn from_report(name: &str, r: &AnalysisReport) -> Self {
        SummaryRow { name: name.into(), mu: r.mu, eta: r.eta, n_r: r.n_r, lower_bound: r.unknotting_lower_bound }
    }
}

fn summary_csv(rows: &[SummaryRow]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError { code: 1, kind: "Io".into(), message: e.to_string() })?;
    }
    let bytes = w.into_inner().map_err(|e| CliError { code: 1, kind: "Io".into(), message: e.to_string() })?;
    let mut s = String::from_utf8(bytes).expect("csv output is UTF-8");
    if rows.is_empty() {
        s = "name,mu,eta,n_r,lower_bound\n".into();
    }
    Ok(s)
}

/// A parsed batch line.
#[derive(Clone, Debug)]
pub struct BatchRow {
    pub line: usize,
    pub name: String,
    pub matrix: crate::Result<SeifertMatrix>,
}

/// Parse batch input. Blank lines, `#` comments and a `name;...` header
/// are skipped.
pub fn parse_batch(text: &str) -> Vec<BatchRow> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, body) = match line.split_once(';') {
            Some((n, b)) => (n.trim().to_string(), b.trim()),
            None => {
                rows.push(BatchRow {
                    line: i + 1,
                    name: String::new(),
                    matrix: Err(Error::Parse("expected name;[[...]]".into())),
                });
                continue;
            }
        };
        if i == 0 && !body.starts_with('[') {
            continue;
        }
        let matrix = SeifertMatrix::parse_brackets(body).map(|m| m.with_name(name.clone()));
        rows.push(BatchRow { line: i + 1, name, matrix });
    }
    rows
}

/// Per-row outcome of a batch run.
pub type BatchOutcome = (BatchRow, crate::Result<AnalysisReport>);

pub fn run_batch(text: &str, config: &Config, jobs: usize) -> Vec<BatchOutcome> {
    let rows = parse_batch(text);
    let work = |row: BatchRow| {
        let r = row.matrix.clone().and_then(|m| analyze_matrix(&m, config).map(|x| x.0));
        (row, r)
    };
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| rows.into_par_iter().map(work).collect()),
        Err(_) => rows.into_iter().map(work).collect(),
    }
}

/// Output of `diagonalize`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagonalizeReport {
    pub input_size: usize,
    pub mu: usize,
    pub eta: usize,
    pub n_r: usize,
    pub size: usize,
    pub reason: String,
    pub entries: Vec<EntryJson>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DiagonalizeInput {
    Entries(Vec<LaurentPoly>),
    Form(DiagonalFormJson),
    Matrix(MatrixJson),
    Seifert(SeifertJson),
}

/// Parse any accepted `diagonalize` input into a diagonal form.
pub fn diagonal_form_from_json(text: &str) -> Result<(usize, DiagonalForm), CliError> {
    let input: DiagonalizeInput = serde_json::from_str(text).map_err(|_| {
        CliError::usage("expected a list of entries, a diagonal form, a matrix or a Seifert matrix")
    })?;
    Ok(match input {
        DiagonalizeInput::Entries(es) => (es.len(), DiagonalForm::from_laurent(&es)?),
        DiagonalizeInput::Form(f) => {
            let d = DiagonalForm::from_json(&f)?;
            (d.size(), d)
        }
        DiagonalizeInput::Matrix(m) => {
            let a = HermitianLaurentMatrix::from_json(&m)?;
            (a.size(), diagonalize(&a)?)
        }
        DiagonalizeInput::Seifert(s) => {
            let k = knot_summary(&SeifertMatrix::from_json(&s)?)?;
            (k.matrix.size(), diagonalize(&k.matrix)?)
        }
    })
}

pub fn diagonalize_report(text: &str) -> Result<DiagonalizeReport, CliError> {
    let (input_size, form) = diagonal_form_from_json(text)?;
    let elementary = elementary_diagonal(&form)?;
    let m = minimal_diagonal(&elementary)?;
    Ok(DiagonalizeReport {
        input_size,
        mu: m.mu,
        eta: m.eta,
        n_r: m.mu.max(m.eta),
        size: m.size,
        reason: m.reason,
        entries: m.form.to_json().entries,
    })
}

pub fn glue_strings(a: &str, b: &str, config: &Config) -> Result<GlueResult, CliError> {
    let a: LaurentPoly = a.parse()?;
    let b: LaurentPoly = b.parse()?;
    Ok(glue_with_tolerance(&a, &b, config.norm_tolerance)?)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let config = load_config(&cli)?;
    let out = cli.output.as_deref();
    match cli.command {
        Command::Analyze { path, input, plot } => {
            let path = pick(path, input)?;
            let j: SeifertJson = serde_json::from_str(&read_input(&path)?).map_err(CliError::json)?;
            let v = SeifertMatrix::from_json(&j)?;
            let (report, samples) = analyze_matrix(&v, &config)?;
            let text = match config.format {
                Format::Json => to_json(&report),
                Format::Csv => summary_csv(&[SummaryRow::from_report(v.name.as_deref().unwrap_or(""), &report)])?,
            };
            write_out(out, &text)?;
            if let Some(p) = plot {
                std::fs::write(&p, plot_csv(&samples)).map_err(|e| CliError::io(&p, e))?;
            }
            Ok(())
        }
        Command::Batch { path, input, jobs } => {
            let path = pick(path, input)?;
            let text = read_input(&path)?;
            if jobs == Some(0) {
                return Err(CliError::usage("--jobs must be at least 1"));
            }
            let jobs = jobs.or(config.jobs).unwrap_or_else(rayon::current_num_threads).max(1);
            let results = run_batch(&text, &config, jobs);
            let mut ok_rows = Vec::new();
            let mut reports = Vec::new();
            for (row, r) in &results {
                match r {
                    Ok(rep) => {
                        ok_rows.push(SummaryRow::from_report(&row.name, rep));
                        reports.push(rep.clone());
                    }
                    Err(e) => eprintln!("line {} ({}): {}: {}", row.line, row.name, e.kind(), e),
                }
            }
            let text = match config.format {
                Format::Json => to_json(&reports),
                Format::Csv => summary_csv(&ok_rows)?,
            };
            write_out(out, &text)?;
            if ok_rows.is_empty() {
                return Err(CliError { code: 2, kind: "NoRows".into(), message: "no row succeeded".into() });
            }
            Ok(())
        }
        Command::Diagonalize { path, input } => {
            let path = pick(path, input)?;
            let report = diagonalize_report(&read_input(&path)?)?;
            write_out(out, &to_json(&report))
        }
        Command::Glue { a, b } => {
            let r = glue_strings(&a, &b, &config)?;
            write_out(out, &to_json(&r))
        }
    }
}

/// Run the command line and return the exit code. Errors are printed as a
/// JSON object on stdout and as a plain line on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            if e.kind != "NoRows" {
                println!("{}", e.to_json());
            }
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
