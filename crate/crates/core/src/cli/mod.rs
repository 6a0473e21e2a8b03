//! Command-line surface. `run_command` is the whole CLI; the binary only
//! prints its output and exits with its code.

pub mod document;
pub mod examples;
pub mod report;

use std::ffi::OsString;
use std::fmt;
use std::path::Path;

use clap::{Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{enumerate_basis, oracle_quotient_dimension};
use crate::cbvf::{classify_paths, extract_presentation, roundtrip_report, validate_cbvf};
use crate::presentation::Presentation;

use document::{CbvfDocument, PresentationDocument};
use report::{
    special_report, symmetric_report, weak_report, BuildReport, CheckReport, ImportReport, OracleView, ValidateReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    UnknownExample(String),
    #[error("{0}")]
    Usage(String),
    #[error("validation failed:\n{}", .0.join("\n"))]
    Validation(Vec<String>),
    #[error("invariant breach: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn validation<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> Self {
        CliError::Validation(items.into_iter().map(|v| v.to_string()).collect())
    }

    /// Machine-readable failure class.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Parse(_) => "parse",
            CliError::Schema(_) => "schema",
            CliError::UnknownExample(_) => "unknown-example",
            CliError::Usage(_) => "usage",
            CliError::Validation(_) => "validation",
            CliError::Invariant(_) => "invariant",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Invariant(_) => 3,
            _ => 4,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "biserial", version, about = "Generalized biserial quiver algebras over exact fields")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// `INPUT` is a document path or a bundled example name such as `ex4.1` or
/// `ex3.6:m=1,n=2`.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a presentation document and list every violation.
    Validate { input: String },
    /// Build the algebra and run the relation self-check.
    Build {
        input: String,
        /// Orbits, admissible arrows, virtual loops, Gabriel quiver, Cartan data.
        #[arg(long)]
        report: bool,
    },
    /// Structural verdicts; with no flag, all of them.
    Check {
        input: String,
        #[arg(long)]
        weakly_symmetric: bool,
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        special_biserial: bool,
    },
    /// Gröbner-basis dimension of the truncated quotient, compared with the formula.
    Oracle {
        input: String,
        /// Path length bound (default: three times the longest cycle).
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// Normalize bisected-quiver data into a presentation.
    ImportCbvf {
        input: String,
        /// Write the resulting presentation document here.
        #[arg(long)]
        emit: Option<String>,
    },
    /// Print a bundled example document; without a name, list them.
    Example { name: Option<String> },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read(input: &str) -> Result<Option<String>, CliError> {
    let path = Path::new(input);
    if path.exists() {
        return std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| CliError::Io { path: input.into(), message: e.to_string() });
    }
    if examples::is_builtin(input) {
        return Ok(None);
    }
    Err(CliError::Io { path: input.into(), message: "no such file or bundled example".into() })
}

pub fn load_presentation_document(input: &str) -> Result<PresentationDocument, CliError> {
    match read(input)? {
        Some(text) => PresentationDocument::parse(&text),
        None => examples::builtin_presentation(input),
    }
}

pub fn load_cbvf_document(input: &str) -> Result<CbvfDocument, CliError> {
    match read(input)? {
        Some(text) => CbvfDocument::parse(&text),
        None => examples::builtin_cbvf(input),
    }
}

fn load(input: &str) -> Result<Presentation, CliError> {
    load_presentation_document(input)?.to_presentation()
}

fn render<T: Serialize + fmt::Display>(json: bool, report: &T) -> String {
    if json {
        serde_json::to_string_pretty(report).expect("reports serialize") + "\n"
    } else {
        report.to_string()
    }
}

fn dispatch(cli: &Cli) -> Result<String, CliError> {
    let json = cli.json;
    match &cli.command {
        Command::Validate { input } => Ok(render(json, &ValidateReport::new(&load(input)?))),
        Command::Build { input, report } => {
            let table = enumerate_basis(&load(input)?);
            Ok(render(json, &BuildReport::new(&table, *report)?))
        }
        Command::Check { input, weakly_symmetric, symmetric, special_biserial } => {
            let p = load(input)?;
            let all = !(*weakly_symmetric || *symmetric || *special_biserial);
            let table = enumerate_basis(&p);
            let out = CheckReport {
                weakly_symmetric: (all || *weakly_symmetric).then(|| weak_report(&table)),
                symmetric: if all || *symmetric { Some(symmetric_report(&table)?) } else { None },
                special_biserial: (all || *special_biserial).then(|| special_report(&p)),
                warnings: report::deformation_warnings(&p),
            };
            Ok(render(json, &out))
        }
        Command::Oracle { input, trunc } => {
            let p = load(input)?;
            let r = oracle_quotient_dimension(&p, *trunc).map_err(|e| CliError::Invariant(e.to_string()))?;
            let view = OracleView::new(&r, &p);
            let text = render(json, &view);
            if !view.agrees {
                return Err(CliError::Invariant(format!(
                    "oracle dimension {} differs from Σ m n² = {}\n{text}",
                    view.dimension, view.formula
                )));
            }
            Ok(text)
        }
        Command::ImportCbvf { input, emit } => {
            let input = load_cbvf_document(input)?.to_input()?;
            let bq = &input.bisected;
            validate_cbvf(bq, &input.h).map_err(|e| CliError::validation(e.iter()))?;
            let p = extract_presentation(bq, &input.h, &input.socle, input.field)
                .map_err(|e| CliError::Validation(e.to_string().lines().map(String::from).collect()))?;
            let rt = roundtrip_report(bq, &input.h, &p);
            let q = bq.quiver();
            let name = |(a, b)| format!("{} {}", q.arrow_id(a), q.arrow_id(b));
            let bad = classify_paths(bq).bad.into_iter().map(name).collect();
            let loops = crate::cbvf::two_regularize(bq).loops;
            let mut out = ImportReport::new(bad, loops, &p, &rt, name);
            if !rt.passed() {
                return Err(CliError::Invariant(format!(
                    "round trip does not recover h at {}",
                    out.mismatches.join(", ")
                )));
            }
            if let Some(path) = emit {
                std::fs::write(path, PresentationDocument::from_presentation(&p).to_json() + "\n")
                    .map_err(|e| CliError::Io { path: path.clone(), message: e.to_string() })?;
                out.emitted = Some(path.clone());
            }
            Ok(render(json, &out))
        }
        Command::Example { name: None } => {
            let names: Vec<&str> = examples::PRESENTATIONS.iter().chain(&examples::CBVF).copied().collect();
            Ok(if json {
                serde_json::to_string_pretty(&names).expect("names serialize") + "\n"
            } else {
                names.join("\n") + "\n"
            })
        }
        Command::Example { name: Some(name) } => {
            let text = match examples::builtin_presentation(name) {
                Ok(doc) => doc.to_json(),
                Err(_) => examples::builtin_cbvf(name)?.to_json(),
            };
            Ok(text + "\n")
        }
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    exit: i32,
    messages: Vec<String>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_command<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Output { code: 0, stdout: text, stderr: String::new() }
                }
                _ => {
                    let err = CliError::Usage(text);
                    Output { code: err.exit_code(), stdout: String::new(), stderr: err.to_string() }
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Output { code: 0, stdout, stderr: String::new() },
        Err(err) if cli.json => {
            let report = ErrorReport {
                error: err.code(),
                exit: err.exit_code(),
                messages: err.to_string().lines().map(String::from).collect(),
            };
            Output {
                code: err.exit_code(),
                stdout: serde_json::to_string_pretty(&report).expect("errors serialize") + "\n",
                stderr: String::new(),
            }
        }
        Err(err) => Output { code: err.exit_code(), stdout: String::new(), stderr: format!("error: {err}\n") },
    }
}
