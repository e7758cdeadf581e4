//! Command-line front end for `noulrich-core`.
//!
//! [`run`] parses arguments, dispatches a subcommand, and prints a report as
//! text or JSON. Exit codes: 0 when the check passed or the answer was
//! computed, 1 when a check failed mathematically, 2 on any error.

pub mod commands;
pub mod corpus;
pub mod error;
pub mod format;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::commands::Outcome;
use crate::error::CliError;
use crate::report::{digest, Report, Tool, TOOL_NAME, TOOL_VERSION};

#[derive(Debug, Parser)]
#[command(name = "noulrich", version, about = "Certify graded-ring hypotheses that rule out Ulrich modules")]
pub struct Cli {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert series of the presented ring.
    Hilbert {
        file: PathBuf,
        /// Number of series coefficients to list.
        #[arg(long, default_value_t = 16)]
        terms: usize,
    },
    /// Krull dimension.
    Dim { file: PathBuf },
    /// Complete-intersection test with its Hilbert-series witness.
    CiCheck { file: PathBuf },
    /// Length of S/(ideal); the ideal defaults to the file's `params`.
    Length {
        file: PathBuf,
        #[arg(long)]
        by: Option<String>,
    },
    /// Multiplicity as the length modulo a homogeneous system of parameters.
    Multiplicity {
        file: PathBuf,
        #[arg(long)]
        params: Option<String>,
    },
    /// `S_a S_j = S_(a+j)` for one `j`, or the full condition up to `--jmax`.
    Surjectivity {
        file: PathBuf,
        #[arg(long)]
        a: u32,
        #[arg(long, conflicts_with = "jmax")]
        j: Option<u32>,
        #[arg(long)]
        jmax: Option<u32>,
    },
    /// `(m^j)_d = S_d` for `d >= a j` and `j <= jmax`.
    Truncation {
        file: PathBuf,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        jmax: u32,
    },
    /// Verify the section-ring certificate carried by the file.
    SectionCert { file: PathBuf },
    /// Newton polygon irreducibility certificate for a polynomial.
    Newton {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// The two polygon variables, comma separated.
        #[arg(long)]
        vars: String,
        /// Substitute `name=value` before taking the polygon.
        #[arg(long = "set")]
        set: Vec<String>,
    },
    /// Compute the kernel of a ring map and compare it with the expected ideal.
    KernelVerify { file: PathBuf },
    /// Is an integer polynomial a product of cyclotomic polynomials?
    Cyclotomic {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value = "t")]
        var: String,
    },
    /// Combined verdict on the existence of Ulrich modules.
    Verdict {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        a: u32,
        #[arg(long)]
        jmax: Option<u32>,
        /// Accept unproved hypotheses as assumptions.
        #[arg(long)]
        ack: bool,
    },
    /// Run every check listed in DIR/corpus.toml.
    Corpus {
        #[arg(default_value = "corpus")]
        dir: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Rees algebra presentation of an ideal (default: all variables).
    Rees {
        file: PathBuf,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Associated graded ring of an ideal (default: all variables).
    Gr {
        file: PathBuf,
        #[arg(long)]
        ideal: Option<String>,
        /// Comma-separated elements that must be zero in the associated graded ring.
        #[arg(long)]
        vanish: Option<String>,
    },
}

/// Run a single non-corpus command in-process.
pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    let budget = commands::budget_from_env()?;
    match command {
        Command::Hilbert { file, terms } => commands::hilbert(file, *terms, budget),
        Command::Dim { file } => commands::dim(file, budget),
        Command::CiCheck { file } => commands::ci_check(file, budget),
        Command::Length { file, by } => commands::length(file, by.as_deref(), budget),
        Command::Multiplicity { file, params } => commands::multiplicity(file, params.as_deref(), budget),
        Command::Surjectivity { file, a, j, jmax } => commands::surjectivity(file, *a, *j, *jmax, budget),
        Command::Truncation { file, a, jmax } => commands::truncation(file, *a, *jmax, budget),
        Command::SectionCert { file } => commands::section_cert(file, budget),
        Command::Newton { poly, vars, set } => commands::newton(poly, vars, set),
        Command::KernelVerify { file } => commands::kernel_verify(file, budget),
        Command::Cyclotomic { poly, var } => commands::cyclotomic(poly, var),
        Command::Verdict { file, a, jmax, ack } => commands::verdict(file, *a, *jmax, *ack, budget),
        Command::Rees { file, ideal } => commands::rees(file, ideal.as_deref(), budget),
        Command::Gr { file, ideal, vanish } => commands::gr(file, ideal.as_deref(), vanish.as_deref(), budget),
        Command::Corpus { .. } => Err(CliError::Usage("corpus cannot be nested".into())),
    }
}

/// Parse `argv` (without the program name) and run it, for corpus entries.
pub fn execute_args(argv: &[String]) -> corpus::Run {
    let parsed = Cli::try_parse_from(std::iter::once(TOOL_NAME.to_string()).chain(argv.iter().cloned()));
    let result = parsed
        .map_err(|e| CliError::Usage(e.to_string()))
        .and_then(|cli| execute(&cli.command));
    match result {
        Ok(o) => corpus::Run {
            exit: if o.passed { 0 } else { 1 },
            results: Some(o.results),
            error: None,
            inputs: o.inputs,
        },
        Err(e) => corpus::Run {
            exit: 2,
            results: None,
            error: Some(e.to_string()),
            inputs: Vec::new(),
        },
    }
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Returns the outcome and the exit code to use (corpus entries may force 2).
fn run_corpus(dir: &std::path::Path, jobs: Option<usize>) -> Result<(Outcome, i32), CliError> {
    let loaded = corpus::load(dir)?;
    let (entries, mut inputs) = corpus::run_all(dir, &loaded.checks, jobs.unwrap_or_else(default_jobs), &execute_args);
    inputs.insert(0, loaded.manifest_bytes);
    let failed: Vec<&str> = entries
        .iter()
        .zip(&loaded.checks)
        .filter(|(e, _)| !e.passed)
        .map(|(_, c)| c.id.as_str())
        .collect();
    let errors: Vec<String> = entries
        .iter()
        .zip(&loaded.checks)
        .filter_map(|(e, c)| e.error.as_ref().map(|m| format!("{}: {m}", c.id)))
        .collect();
    let results = json!({
        "total": entries.len(),
        "passed_count": entries.len() - failed.len(),
        "failed": failed,
        "errors": errors,
        "entries": entries.iter().map(|e| e.json.clone()).collect::<Vec<_>>(),
    });
    let code = if !errors.is_empty() {
        2
    } else if failed.is_empty() {
        0
    } else {
        1
    };
    Ok((
        Outcome {
            results,
            passed: code == 0,
            inputs,
        },
        code,
    ))
}

fn print_help(err: &clap::Error) -> i32 {
    let code = if err.use_stderr() { 2 } else { 0 };
    let text = err.render().to_string();
    if code == 0 {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    code
}

/// Entry point: returns the process exit code. Output goes to stdout, errors to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => return print_help(&e),
    };
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .filter(|a| *a != "--json")
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Corpus { dir, jobs } => run_corpus(dir, *jobs),
        other => execute(other).map(|o| {
            let code = if o.passed { 0 } else { 1 };
            (o, code)
        }),
    };
    let (outcome, code) = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let report = Report {
        tool: Tool {
            name: TOOL_NAME,
            version: TOOL_VERSION,
        },
        input_digest: digest(&echo, &outcome.inputs),
        command: echo,
        results: outcome.results,
        passed: outcome.passed,
        exit_code: code,
        timing_ms: start.elapsed().as_millis() as u64,
    };
    let text = if cli.json { report.to_json() } else { report.to_text() };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", text.trim_end());
    if code == 2 {
        for e in report.results["errors"].as_array().into_iter().flatten() {
            eprintln!("error: corpus entry {}", e.as_str().unwrap_or_default());
        }
    }
    code
}
