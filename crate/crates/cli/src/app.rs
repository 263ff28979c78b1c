use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kvassoc::freelie::rescaled_ch;
use kvassoc::kvgrt::*;
use kvassoc::{Error, Rational};

use crate::document::{DocError, Kind, Series, SeriesDocument};
use crate::suites::{run_suite, Suite, SuiteReport};

#[derive(Parser, Debug)]
#[command(name = "kvassoc", version, about = "Exact computations with associators and KV solutions")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Source {
    #[value(name = "F")]
    F,
    #[value(name = "phi")]
    Phi,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The series ch_s(x, y) up to a degree.
    Bch {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "1", value_parser = parse_rational)]
        scale: Rational,
    },
    /// Solve for an associator degree by degree.
    Associator {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "1", value_parser = parse_rational)]
        s: Rational,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Turn an associator into a solution of the KV problem.
    KvSolve {
        /// Associator document; `-` reads stdin.
        #[arg(long)]
        associator: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        s: Rational,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Duflo series of a KV solution F or of an associator.
    Duflo {
        #[arg(long, value_enum)]
        from: Source,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        degree: usize,
    },
    /// Kernel, image and cohomology dimensions of a complex.
    Cohomology {
        #[arg(long, value_parser = parse_with::<Complex>)]
        which: Complex,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = 1)]
        min_degree: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Dimensions of sder_2, kv_2 or hkv_2 by degree.
    Dims {
        #[arg(long, value_parser = parse_with::<Subspace>)]
        which: Subspace,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_parser = parse_with::<Suite>)]
        suite: Suite,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|_| format!("{s:?} is not a rational p/q"))
}

fn parse_with<T: std::str::FromStr>(s: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e: T::Err| e.to_string())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Document { path: String, source: DocError },
    #[error("OBSTRUCTED: {0}")]
    Obstructed(Error),
    #[error(transparent)]
    Algebra(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Obstructed { .. } => CliError::Obstructed(e),
            Error::Range(msg) => CliError::Usage(msg),
            e => CliError::Algebra(e),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Obstructed(_) | CliError::Algebra(Error::PiMismatch { .. }) => 1,
            _ => 2,
        }
    }
}

fn label(path: Option<&Path>) -> String {
    match path {
        Some(p) if p != Path::new("-") => p.display().to_string(),
        _ => "<stdin>".to_string(),
    }
}

fn read_document(path: Option<&Path>) -> Result<SeriesDocument, CliError> {
    let name = label(path);
    let io_err = |source| CliError::Io { path: name.clone(), source };
    let text = match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).map_err(io_err)?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(io_err)?;
            s
        }
    };
    SeriesDocument::from_json(&text).map_err(|source| CliError::Document { path: name, source })
}

fn expect(doc: &SeriesDocument, path: Option<&Path>, kind: Kind, n: usize) -> Result<Series, CliError> {
    doc.expect(kind, n).map_err(|source| CliError::Document { path: label(path), source })
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::write(p, format!("{text}\n")).map_err(|source| CliError::Io { path: p.display().to_string(), source })
        }
        _ => {
            println!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports always serialize")
}

/// Right-aligned columns under a header row.
fn text_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..headers.len())
        .map(|i| rows.iter().map(|r| r[i].len()).chain([headers[i].len()]).max().unwrap_or(0))
        .collect();
    let line =
        |cells: Vec<&str>| cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ");
    let mut out = vec![line(headers.to_vec())];
    out.extend(rows.iter().map(|r| line(r.iter().map(String::as_str).collect())));
    out.join("\n")
}

#[derive(Serialize)]
struct CohomologyTable {
    complex: String,
    arity: usize,
    truncation_degree: usize,
    rows: Vec<CohomologyLine>,
}

#[derive(Serialize)]
struct CohomologyLine {
    degree: usize,
    kernel: usize,
    image: usize,
    cohomology: usize,
}

#[derive(Serialize)]
struct DimsTable {
    subspace: String,
    truncation_degree: usize,
    rows: Vec<DimLine>,
}

#[derive(Serialize)]
struct DimLine {
    degree: usize,
    dim: usize,
}

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
enum DufloJson {
    Solved { series: SeriesDocument },
    Obstructed { degree: usize },
}

#[derive(Serialize)]
struct KvReportJson {
    s: String,
    truncation_degree: usize,
    is_solution: bool,
    kv1_residual: SeriesDocument,
    duflo: DufloJson,
}

impl KvReportJson {
    fn new(rep: &KvReport, truncation_degree: usize) -> Self {
        KvReportJson {
            s: rep.s.to_string(),
            truncation_degree,
            is_solution: rep.is_solution(),
            kv1_residual: SeriesDocument::from_series(&Series::Lie(rep.kv1_residual.clone())),
            duflo: match &rep.duflo {
                DufloOutcome::Solved(f) => {
                    DufloJson::Solved { series: SeriesDocument::from_series(&Series::Duflo(f.clone())) }
                }
                DufloOutcome::Obstructed(d) => DufloJson::Obstructed { degree: *d },
            },
        }
    }
}

#[derive(Serialize)]
struct KvSolveOutput {
    #[serde(rename = "F")]
    f: SeriesDocument,
    report: KvReportJson,
}

fn suite_text(rep: &SuiteReport) -> String {
    let mut lines = vec![format!(
        "suite {} at degree {}: {}",
        rep.suite,
        rep.truncation_degree,
        if rep.pass { "PASS" } else { "FAIL" }
    )];
    for c in &rep.checks {
        let detail = if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) };
        lines.push(format!("  {} {}{detail}", if c.pass { "PASS" } else { "FAIL" }, c.name));
    }
    lines.join("\n")
}

/// Runs one command; `Ok(false)` means a check failed.
fn execute(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Bch { degree, scale } => {
            let doc = SeriesDocument::from_series(&Series::Lie(rescaled_ch(&scale, degree)));
            write_output(None, &doc.to_json())?;
            Ok(true)
        }
        Command::Associator { degree, s, out } => {
            let phi = associator_solve(degree, &s)?;
            write_output(out.as_deref(), &SeriesDocument::from_series(&Series::TautLog(phi)).to_json())?;
            Ok(true)
        }
        Command::KvSolve { associator, s, out } => {
            let path = Some(associator.as_path());
            let Series::TautLog(phi) = expect(&read_document(path)?, path, Kind::TautLog, 3)? else { unreachable!() };
            let f = kv_from_associator(&phi, &s)?;
            let report = KvReportJson::new(&kv_check(&f, &s)?, f.max_degree());
            let ok = report.is_solution;
            let f_doc = SeriesDocument::from_series(&Series::TautLog(f));
            match out {
                Some(p) => {
                    write_output(Some(&p), &f_doc.to_json())?;
                    write_output(None, &json(&report))?;
                }
                None => write_output(None, &json(&KvSolveOutput { f: f_doc, report }))?,
            }
            Ok(ok)
        }
        Command::Duflo { from, input, degree } => {
            let path = input.as_deref();
            let doc = read_document(path)?;
            if degree > doc.max_degree {
                return Err(CliError::Usage(format!(
                    "--degree {degree} exceeds the document's max_degree {}",
                    doc.max_degree
                )));
            }
            let n = if from == Source::F { 2 } else { 3 };
            let Series::TautLog(g) = expect(&doc, path, Kind::TautLog, n)? else { unreachable!() };
            let g = g.truncate(degree);
            let f = match from {
                Source::F => duflo_from_log(&g)?,
                Source::Phi => duflo_from_phi(&g)?,
            };
            write_output(None, &SeriesDocument::from_series(&Series::Duflo(f)).to_json())?;
            Ok(true)
        }
        Command::Cohomology { which, arity, max_degree, min_degree, format } => {
            let rows = cohomology_report(which, arity, min_degree..=max_degree)?;
            let text = match format {
                Format::Json => json(&CohomologyTable {
                    complex: which.to_string(),
                    arity,
                    truncation_degree: max_degree,
                    rows: rows
                        .iter()
                        .map(|r| CohomologyLine {
                            degree: r.degree,
                            kernel: r.kernel,
                            image: r.image,
                            cohomology: r.cohomology,
                        })
                        .collect(),
                }),
                Format::Text => {
                    let cells: Vec<Vec<String>> = rows
                        .iter()
                        .map(|r| [r.degree, r.kernel, r.image, r.cohomology].iter().map(usize::to_string).collect())
                        .collect();
                    format!(
                        "{which} at arity {arity}, degrees ≤ {max_degree}\n{}",
                        text_table(&["degree", "kernel", "image", "cohomology"], &cells)
                    )
                }
            };
            write_output(None, &text)?;
            Ok(true)
        }
        Command::Dims { which, max_degree, format } => {
            let rows = dims_report(which, 1..=max_degree);
            let text = match format {
                Format::Json => json(&DimsTable {
                    subspace: which.to_string(),
                    truncation_degree: max_degree,
                    rows: rows.iter().map(|r| DimLine { degree: r.degree, dim: r.dim }).collect(),
                }),
                Format::Text => {
                    let cells: Vec<Vec<String>> =
                        rows.iter().map(|r| vec![r.degree.to_string(), r.dim.to_string()]).collect();
                    format!("{which}, degrees ≤ {max_degree}\n{}", text_table(&["degree", "dim"], &cells))
                }
            };
            write_output(None, &text)?;
            Ok(true)
        }
        Command::Verify { suite, degree, format } => {
            let rep = run_suite(suite, degree)?;
            let text = match format {
                Format::Json => json(&rep),
                Format::Text => suite_text(&rep),
            };
            write_output(None, &text)?;
            Ok(rep.pass)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let code = match execute(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    let _ = io::stdout().flush();
    ExitCode::from(code)
}
