//! Argument parsing, stage dispatch and exit codes.

use crate::data::{ReferenceData, DATA_VERSION};
use crate::report::{CaseReport, Report, Status};
use crate::stages::{CaseContext, Stage, StageError};
use canmod_core::Case;
use clap::{Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "canmod", version, about = "Verify canonical models of arithmetic once-punctured tori")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Traces of the generators and their commutator.
    Reconstruct,
    /// The order Z[Γ′] and its integral conjugate.
    Orders,
    /// Coset enumeration and the monodromy triple.
    Monodromy,
    /// Ramification of the Belyi maps.
    Belyi,
    /// Canonical models and their q-expansions.
    Qexp,
    /// Printed orders, levels and involutions.
    Modular,
    /// Every stage.
    VerifyAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Reconstruct => "reconstruct",
            Command::Orders => "orders",
            Command::Monodromy => "monodromy",
            Command::Belyi => "belyi",
            Command::Qexp => "qexp",
            Command::Modular => "modular",
            Command::VerifyAll => "verify-all",
        }
    }

    pub fn stages(self) -> Vec<Stage> {
        match self {
            Command::Reconstruct => vec![Stage::Reconstruct],
            Command::Orders => vec![Stage::Orders],
            Command::Monodromy => vec![Stage::Monodromy],
            Command::Belyi => vec![Stage::Belyi],
            Command::Qexp => vec![Stage::Qexp],
            Command::Modular => vec![Stage::Modular],
            Command::VerifyAll => Stage::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Flags {
    /// I, II, III, IV or all.
    #[arg(long, global = true, default_value = "all", value_parser = parse_cases)]
    pub case: CaseSelection,
    /// Number of q-expansion terms.
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u16).range(1..=64))]
    pub precision: u16,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Read reference data from this directory.
    #[arg(long, global = true)]
    pub data_dir: Option<PathBuf>,
    /// Record wall-clock time per stage.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseSelection(pub Vec<Case>);

fn parse_cases(s: &str) -> Result<CaseSelection, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(CaseSelection(Case::ALL.to_vec()));
    }
    s.parse::<Case>().map(|c| CaseSelection(vec![c])).map_err(|e| e.to_string())
}

/// What a run produced: exit code and the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, msg: impl Into<String>) -> Outcome {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { code, stdout: String::new(), stderr }
    }
}

fn run_case(case: Case, data: &ReferenceData, stages: &[Stage], precision: usize, timing: bool) -> Result<CaseReport, StageError> {
    let cx = CaseContext::new(case, data, precision);
    let mut reports = Vec::new();
    for &s in stages {
        let start = Instant::now();
        let mut r = cx.run(s)?;
        if timing {
            r.millis = Some(start.elapsed().as_millis());
        }
        reports.push(r);
    }
    let status = reports.iter().map(|r| r.status).max().unwrap_or(Status::Pass);
    Ok(CaseReport { case, status, stages: reports })
}

/// Run the selected stages for each case, one thread per case.
pub fn build_report(command: Command, cases: &[Case], data: &ReferenceData, precision: usize, timing: bool) -> Result<Report, StageError> {
    let stages = command.stages();
    let results: Vec<Result<CaseReport, StageError>> = std::thread::scope(|scope| {
        let stages = &stages;
        let handles: Vec<_> = cases.iter().map(|&c| (c, scope.spawn(move || run_case(c, data, stages, precision, timing)))).collect();
        handles
            .into_iter()
            .map(|(c, h)| h.join().unwrap_or_else(|_| Err(StageError::Internal { stage: "run", message: format!("case {c} panicked") })))
            .collect()
    });
    let cases = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Report::new(command.name(), precision, DATA_VERSION, cases))
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::error(code, text) } else { Outcome { code, stdout: text, stderr: String::new() } };
        }
    };
    let f = &cli.flags;
    let data = match ReferenceData::load(f.data_dir.as_deref()) {
        Ok(d) => d,
        Err(e) => return Outcome::error(EXIT_USAGE, format!("error: {e}")),
    };
    let report = match build_report(cli.command, &f.case.0, &data, f.precision as usize, f.timing) {
        Ok(r) => r,
        Err(StageError::Data(e)) => return Outcome::error(EXIT_USAGE, format!("error: {e}")),
        Err(e) => return Outcome::error(EXIT_INTERNAL, format!("internal error: {e}")),
    };
    let text = match f.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    let code = if report.status == Status::Fail { EXIT_FAIL } else { EXIT_PASS };
    match &f.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: format!("{}: report written to {}\n", report.status.label(), path.display()) },
            Err(e) => Outcome::error(EXIT_USAGE, format!("error: cannot write {}: {e}", path.display())),
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}
