//! `ifpart`: analyze graphs, run property checks, generate instances.
//!
//! Exit codes: 0 success or SAT, 1 UNSAT or refuted, 2 usage or input
//! error, 3 inconclusive (resource cap).

mod analyze;
mod check;
mod generate;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "ifpart", version, about = "I,F-partitions, potentials and star colorings of sparse graphs")]
struct Cli {
    /// Also write a JSON run report (command, input digest, outcome,
    /// exit code, wall time) to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one analysis on an input graph.
    Analyze(analyze::AnalyzeArgs),
    /// Check a property over a seeded random corpus.
    Check(check::CheckArgs),
    /// Print a seeded random graph.
    Generate(generate::GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Negative = 1,
    Usage = 2,
    Inconclusive = 3,
}

/// What a command produced: text for stdout plus a JSON payload for the
/// run report.
pub struct Output {
    pub stdout: String,
    pub payload: serde_json::Value,
    pub exit: Exit,
    pub input: Vec<u8>,
}

impl Output {
    pub fn json(payload: serde_json::Value, exit: Exit, input: Vec<u8>) -> Self {
        let mut stdout = serde_json::to_string(&payload).expect("serializable");
        stdout.push('\n');
        Output {
            stdout,
            payload,
            exit,
            input,
        }
    }
}

#[derive(Debug)]
pub struct CliError(pub String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: String,
    input_digest: String,
    outcome: &'a serde_json::Value,
    exit_code: i32,
    wall_time_ms: f64,
}

/// Reads a file, or standard input when `path` is `None` or `-`.
pub fn read_input(path: Option<&Path>) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    match path {
        Some(p) if p != Path::new("-") => {
            buf = std::fs::read(p).map_err(|e| CliError(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_end(&mut buf)?;
        }
    }
    Ok(buf)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let start = Instant::now();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(args) => analyze::run(args),
        Command::Check(args) => check::run(args),
        Command::Generate(args) => generate::run(args),
    };
    let output = result.unwrap_or_else(|CliError(message)| {
        eprintln!("error: {message}");
        Output {
            stdout: String::new(),
            payload: serde_json::json!({ "error": message }),
            exit: Exit::Usage,
            input: Vec::new(),
        }
    });
    print!("{}", output.stdout);

    if let Some(path) = &cli.report {
        let report = RunReport {
            command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
            input_digest: format!("sha256:{}", hex::encode(Sha256::digest(&output.input))),
            outcome: &output.payload,
            exit_code: output.exit as i32,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        };
        let text = serde_json::to_string_pretty(&report).expect("serializable");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: cannot write report {}: {e}", path.display());
            return ExitCode::from(Exit::Usage as u8);
        }
    }
    ExitCode::from(output.exit as u8)
}
