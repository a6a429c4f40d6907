mod tables;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use cis_core::{classify_step, AlgebraType, CaseReport, Error, Family, ParabolicSpec};
use clap::{Parser, Subcommand, ValueEnum};

use verify::{Scope, Summary};

#[derive(Parser)]
#[command(name = "cis", version, about = "Special values for quasi-Heisenberg parabolics")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify the nilradical of a parabolic subalgebra.
    Classify {
        #[arg(long = "type")]
        family: char,
        #[arg(long)]
        rank: usize,
        /// Deleted simple roots, 1-based, comma separated.
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        subset: Vec<usize>,
    },
    /// Compute the full report for a maximal case such as `B7(3)`.
    Case {
        label: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the reference tables and the property suite.
    Verify {
        #[arg(long, value_enum)]
        scope: Scope,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Excluded(_) => 3,
            Error::Parse(_)
            | Error::InvalidSpec(_)
            | Error::InvalidType(_)
            | Error::IndexOutOfRange { .. }
            | Error::NotQuasiHeisenberg(_)
            | Error::Unsupported(_) => 2,
            _ => 4,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 4, msg: e.to_string() }
    }
}

fn color() -> bool {
    std::env::var("CIS_COLOR").is_ok_and(|v| v == "1")
}

fn mark(passed: bool) -> String {
    let (word, code) = if passed { ("PASS", "32") } else { ("FAIL", "31") };
    if color() {
        format!("\x1b[{code}m{word}\x1b[0m")
    } else {
        word.to_string()
    }
}

fn emit(out: Option<&PathBuf>, body: &[u8]) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, body)?,
        None => std::io::stdout().lock().write_all(body)?,
    }
    Ok(())
}

fn json(v: &impl serde::Serialize) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| Failure { code: 4, msg: e.to_string() })
}

fn summary_body(s: &Summary, format: Format) -> Result<Vec<u8>, Failure> {
    Ok(match format {
        Format::Json => json(s)?.into_bytes(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let err = |e: csv::Error| Failure { code: 4, msg: e.to_string() };
            w.write_record(["check", "passed", "detail"]).map_err(err)?;
            for c in &s.checks {
                w.write_record([c.name.as_str(), if c.passed { "true" } else { "false" }, c.detail.as_str()])
                    .map_err(err)?;
            }
            w.into_inner().map_err(|e| Failure { code: 4, msg: e.to_string() })?
        }
        Format::Text => {
            let mut t = String::new();
            for c in &s.checks {
                t.push_str(&format!("{} {}  {}\n", mark(c.passed), c.name, c.detail));
            }
            t.push_str(&format!("{} passed, {} failed\n", s.passed, s.failed));
            t.into_bytes()
        }
    })
}

fn case_body(r: &CaseReport, format: Format) -> Result<Vec<u8>, Failure> {
    Ok(match format {
        Format::Json => json(r)?.into_bytes(),
        Format::Text => r.to_text().into_bytes(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let err = |e: csv::Error| Failure { code: 4, msg: e.to_string() };
            w.write_record(CaseReport::CSV_HEADER).map_err(err)?;
            r.write_csv_rows(&mut w)?;
            w.into_inner().map_err(|e| Failure { code: 4, msg: e.to_string() })?
        }
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Classify { family, rank, subset } => {
            let f = Family::from_letter(family).ok_or_else(|| Failure::from(Error::InvalidType(family.to_string())))?;
            let spec = ParabolicSpec::new(AlgebraType::new(f, rank)?, &subset)?;
            let c = classify_step(&spec)?;
            emit(None, format!("{c}\n").as_bytes())?;
            Ok(0)
        }
        Cmd::Case { label, format, out } => {
            let spec: ParabolicSpec = label.parse()?;
            let report = CaseReport::build(&spec)?;
            emit(out.as_ref(), &case_body(&report, format)?)?;
            Ok(0)
        }
        Cmd::Verify { scope, format, out } => {
            let s = verify::run(scope);
            emit(out.as_ref(), &summary_body(&s, format)?)?;
            Ok(if s.failed == 0 { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
