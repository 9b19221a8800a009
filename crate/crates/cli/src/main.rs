//! `hororeal`: existence, counting and fan-extendability of equivariant real
//! structures on horospherical varieties.
//!
//! Exit codes: 0 the structure exists (or the command succeeded), 1 it does
//! not (or a table check failed), 2 invalid input.

mod job;
mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use job::{build_group, build_job, parse_group_string, JobInput};
use report::{ErrorReport, Status, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "hororeal", version, about = "Equivariant real structures on horospherical varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Job document (JSON); `-` or absent reads standard input.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Emit JSON reports.
    #[arg(long, global = true)]
    json: bool,
    /// The input is a JSON array of jobs, processed in parallel.
    #[arg(long, global = true)]
    batch: bool,
    /// Largest rank for `picard1` and `tables`.
    #[arg(long, global = true, default_value_t = 8)]
    max_rank: usize,
}

#[derive(Subcommand, Clone, PartialEq, Eq)]
enum Command {
    /// List the real group structures of a group up to equivalence.
    ClassifyGroup {
        /// Group such as `A1xA1` or `D4`; otherwise taken from the input.
        #[arg(value_name = "GROUP")]
        group: Option<String>,
    },
    /// Existence and number of equivariant real structures on G/H.
    Check,
    /// Extendability of a structure to the embedding given by a colored fan.
    Fan,
    /// Real forms for the smooth horospherical varieties of Picard rank one.
    Picard1,
    /// The embedded Tits-class tables with validation status.
    Tables,
}

impl Command {
    fn verb(&self) -> &'static str {
        match self {
            Command::ClassifyGroup { .. } => "classify-group",
            Command::Check => "check",
            Command::Fan => "fan",
            Command::Picard1 => "picard1",
            Command::Tables => "tables",
        }
    }
}

struct Output {
    json: Value,
    text: String,
    status: Status,
}

fn output<T: Serialize>(r: &T, text: String, status: Status) -> Output {
    Output { json: serde_json::to_value(r).expect("report serializes"), text, status }
}

fn failure(verb: &str, error: String) -> Output {
    let r = ErrorReport { schema_version: SCHEMA_VERSION, verb: verb.to_string(), error: error.clone() };
    output(&r, format!("error: {error}"), Status::Invalid)
}

fn read_input(path: &Option<PathBuf>) -> Result<String, String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
            Ok(s)
        }
    }
}

fn parse_job(v: Value) -> Result<JobInput, String> {
    serde_json::from_value(v).map_err(|e| format!("job: {e}"))
}

fn run_job(cmd: &Command, input: JobInput) -> Output {
    let verb = cmd.verb();
    let job = match build_job(&input) {
        Ok(j) => j,
        Err(e) => return failure(verb, e),
    };
    let result = match cmd {
        Command::Check | Command::Fan => {
            report::check_job(&input, &job, *cmd == Command::Fan).map(|(r, s)| output(&r, report::render_text_check(&r), s))
        }
        Command::ClassifyGroup { .. } => report::classify_group(&job.group, &job.factors)
            .map(|r| output(&r, report::render_text_classify(&r), Status::Yes)),
        Command::Picard1 | Command::Tables => unreachable!("no job input"),
    };
    result.unwrap_or_else(|e| failure(verb, e))
}

fn run(cli: &Cli) -> Vec<Output> {
    let verb = cli.command.verb();
    match &cli.command {
        Command::Picard1 => vec![report::picard1(cli.max_rank)
            .map(|r| output(&r, report::render_text_picard1(&r), Status::Yes))
            .unwrap_or_else(|e| failure(verb, e))],
        Command::Tables => vec![report::tables(cli.max_rank)
            .map(|(r, s)| output(&r, report::render_text_tables(&r), s))
            .unwrap_or_else(|e| failure(verb, e))],
        Command::ClassifyGroup { group: Some(g) } => {
            let out = parse_group_string(g)
                .and_then(|gi| build_group(&gi))
                .and_then(|(g, f)| report::classify_group(&g, &f))
                .map(|r| output(&r, report::render_text_classify(&r), Status::Yes));
            vec![out.unwrap_or_else(|e| failure(verb, e))]
        }
        cmd => {
            let text = match read_input(&cli.input) {
                Ok(t) => t,
                Err(e) => return vec![failure(verb, e)],
            };
            let doc: Value = match serde_json::from_str(&text) {
                Ok(v) => v,
                Err(e) => return vec![failure(verb, format!("input: {e}"))],
            };
            if cli.batch {
                let Value::Array(jobs) = doc else {
                    return vec![failure(verb, "input: --batch expects an array of jobs".into())];
                };
                jobs.into_par_iter()
                    .enumerate()
                    .map(|(i, v)| match parse_job(v) {
                        Ok(j) => run_job(cmd, j),
                        Err(e) => failure(verb, format!("jobs[{i}]: {e}")),
                    })
                    .collect()
            } else {
                vec![parse_job(doc).map_or_else(|e| failure(verb, e), |j| run_job(cmd, j))]
            }
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = writeln!(io::stdout().lock(), "{s}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outputs = run(&cli);
    if cli.json {
        let v = if cli.batch {
            Value::Array(outputs.iter().map(|o| o.json.clone()).collect())
        } else {
            outputs[0].json.clone()
        };
        emit(&serde_json::to_string_pretty(&v).expect("json"));
    } else {
        let text = outputs.iter().map(|o| o.text.as_str()).collect::<Vec<_>>().join("\n\n");
        if !cli.batch && outputs[0].status == Status::Invalid {
            eprintln!("{text}");
        } else {
            emit(&text);
        }
    }
    let worst = outputs.iter().map(|o| o.status).max().unwrap_or(Status::Yes);
    ExitCode::from(worst as u8)
}
