//! Argument parsing and command execution for the `nccover` binary.
//!
//! Exit status: 0 when every verdict is true, 1 when some verdict is false,
//! 2 on any input error (unreadable file, malformed JSON, schema violation,
//! rejected parameters, bad flags).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::report::render;
use crate::run::{run_scenario, RunOptions};
use crate::scenario::{check_tolerance, load_scenario, InputError, Kind};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "nccover", version, about = "Finite noncommutative covering projections: scenario runner")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Galois frame conditions for a finite group action (`galois-check` scenarios)
    CheckGalois(CommonArgs),
    /// Cotensor product of a right and a left G-module, by three routes
    Cotensor(CommonArgs),
    /// Borel construction of two G-sets or two G-algebras
    Borel(CommonArgs),
    /// Flat-bundle module of a local system over a covering
    FlatBundle(CommonArgs),
    /// K0 class of a flat-bundle module
    KClass(CommonArgs),
    /// Fuzzy torus covers, connections and twisted descent
    Torus(CommonArgs),
    /// Any scenario kind
    Run(CommonArgs),
}

impl Command {
    fn parts(&self) -> (&CommonArgs, &'static str, &'static [Kind]) {
        match self {
            Command::CheckGalois(a) => (a, "check-galois", &[Kind::GaloisCheck]),
            Command::Cotensor(a) => (a, "cotensor", &[Kind::Cotensor]),
            Command::Borel(a) => (a, "borel", &[Kind::Borel]),
            Command::FlatBundle(a) => (a, "flat-bundle", &[Kind::FlatBundle]),
            Command::KClass(a) => (a, "k-class", &[Kind::KClass]),
            Command::Torus(a) => (a, "torus", &[Kind::TorusCover, Kind::TorusConnection, Kind::Descent]),
            Command::Run(a) => (a, "run", &Kind::ALL),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Scenario file
    #[arg(required_unless_present = "batch", conflicts_with = "batch")]
    pub scenario: Option<PathBuf>,
    /// Tolerance for every residual check, overriding the scenario's
    #[arg(long, value_name = "REAL")]
    pub tolerance: Option<f64>,
    /// Cross-check against the brute-force oracles
    #[arg(long)]
    pub with_oracle: bool,
    /// Also write the JSON report here (with --batch: the directory for report files)
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
    /// Suppress the human-readable summary on standard error
    #[arg(long)]
    pub quiet: bool,
    /// Run every `*.json` scenario in a directory concurrently, one report file each
    #[arg(long, value_name = "DIR")]
    pub batch: Option<PathBuf>,
}

/// Entry point shared by the binary and the tests.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_PASS
            };
        }
    };
    let (args, name, kinds) = cli.command.parts();
    if let Some(t) = args.tolerance {
        if let Err(e) = check_tolerance(t) {
            let _ = writeln!(stderr, "error: --tolerance: {e}");
            return EXIT_INPUT;
        }
    }
    let options = RunOptions {
        tolerance: args.tolerance,
        with_oracle: args.with_oracle,
    };
    match (&args.batch, &args.scenario) {
        (Some(dir), _) => run_batch(dir, args, name, kinds, &options, stdout, stderr),
        (None, Some(path)) => run_single(path, args, name, kinds, &options, stdout, stderr),
        (None, None) => unreachable!("clap requires a scenario or --batch"),
    }
}

/// A report as JSON text plus its exit status, or an input error.
fn evaluate(path: &Path, command: &str, kinds: &[Kind], options: &RunOptions) -> Result<(String, String, i32), InputError> {
    let scenario = load_scenario(path)?;
    if !kinds.contains(&scenario.kind) {
        return Err(InputError::new(format!(
            "`{command}` cannot run a `{}` scenario; use `run`",
            scenario.kind
        )));
    }
    let report = run_scenario(&scenario, options)?;
    Ok((report.to_json(), render(&report), report.exit_code()))
}

fn run_single(
    path: &Path,
    args: &CommonArgs,
    command: &str,
    kinds: &[Kind],
    options: &RunOptions,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    match evaluate(path, command, kinds, options) {
        Err(e) => {
            let _ = writeln!(stderr, "error: {}: {e}", path.display());
            EXIT_INPUT
        }
        Ok((json, human, code)) => {
            if let Some(out) = &args.report {
                if let Err(e) = std::fs::write(out, &json) {
                    let _ = writeln!(stderr, "error: cannot write report {}: {e}", out.display());
                    return EXIT_INPUT;
                }
            }
            let _ = stdout.write_all(json.as_bytes());
            if !args.quiet {
                let _ = stderr.write_all(human.as_bytes());
            }
            code
        }
    }
}

#[derive(Serialize)]
struct BatchEntry {
    scenario: String,
    exit_code: i32,
    output: String,
}

#[derive(Serialize)]
struct BatchSummary {
    format_version: u32,
    exit_code: i32,
    results: Vec<BatchEntry>,
}

fn run_batch(
    dir: &Path,
    args: &CommonArgs,
    command: &str,
    kinds: &[Kind],
    options: &RunOptions,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let files = match scenario_files(dir) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot list {}: {e}", dir.display());
            return EXIT_INPUT;
        }
    };
    let out_dir = args.report.clone().unwrap_or_else(|| dir.to_path_buf());
    if let Err(e) = std::fs::create_dir_all(&out_dir) {
        let _ = writeln!(stderr, "error: cannot create {}: {e}", out_dir.display());
        return EXIT_INPUT;
    }
    // Each worker writes only its own file; collection preserves input order.
    let results: Vec<(BatchEntry, String)> = files
        .par_iter()
        .map(|path| {
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let file = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let (output, contents, code, human) = match evaluate(path, command, kinds, options) {
                Ok((json, human, code)) => (format!("{stem}.report.json"), json, code, human),
                Err(e) => (format!("{stem}.error.txt"), format!("{e}\n"), EXIT_INPUT, format!("error: {e}\n")),
            };
            let (output, code, human) = match std::fs::write(out_dir.join(&output), contents) {
                Ok(()) => (output, code, human),
                Err(e) => (output, EXIT_INPUT, format!("error: cannot write report: {e}\n")),
            };
            let entry = BatchEntry {
                scenario: file,
                exit_code: code,
                output,
            };
            (entry, human)
        })
        .collect();
    let exit_code = results.iter().map(|(e, _)| e.exit_code).max().unwrap_or(EXIT_PASS);
    if !args.quiet {
        for (entry, human) in &results {
            let _ = writeln!(stderr, "== {}", entry.scenario);
            let _ = stderr.write_all(human.as_bytes());
        }
    }
    let summary = BatchSummary {
        format_version: crate::scenario::FORMAT_VERSION,
        exit_code,
        results: results.into_iter().map(|(e, _)| e).collect(),
    };
    let mut json = serde_json::to_string_pretty(&summary).expect("plain data");
    json.push('\n');
    let _ = stdout.write_all(json.as_bytes());
    exit_code
}

/// `*.json` files in `dir` other than report files, sorted by name.
fn scenario_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .filter(|p| {
            let name = p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            name.ends_with(".json") && !name.ends_with(".report.json")
        })
        .collect();
    files.sort();
    Ok(files)
}
