//! `qms <module> <op> --flags`: one subcommand per library capability, with
//! JSON or CSV output carrying the full run configuration.
//!
//! Exit codes: 0 success, 1 contract violation, 2 usage or validation error.

mod args;
mod commands;
mod table;

pub use args::{parse_num, Cli, Format, Mode, Module, NumArg};
pub use table::{Metadata, ResultTable};

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactmath::MathError;
use crate::operators::OperatorError;
use crate::parabola::ParabolaError;
use crate::surfaces::SurfaceError;
use crate::torusdegree::TorusError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("contract violation: {0}")]
    Contract(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Contract(_) => 1,
        }
    }
}

impl From<MathError> for CliError {
    fn from(e: MathError) -> Self {
        match e {
            MathError::NotDivisible { .. } => CliError::Contract(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        match e {
            SurfaceError::PropertyViolated(_) => CliError::Contract(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ParabolaError> for CliError {
    fn from(e: ParabolaError) -> Self {
        match e {
            ParabolaError::Math(m) => m.into(),
            ParabolaError::Factorization { .. }
            | ParabolaError::BracketLost { .. }
            | ParabolaError::PrecisionExhausted { .. } => CliError::Contract(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<OperatorError> for CliError {
    fn from(e: OperatorError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<TorusError> for CliError {
    fn from(e: TorusError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn config_of(cli: &Cli) -> Result<Value, CliError> {
    let mut v = serde_json::to_value(cli).expect("arguments serialize");
    if let Some(bits) = commands::precision_bits()? {
        v["precision_bits"] = json!(bits);
    }
    Ok(v)
}

fn run_one(cli: &Cli) -> Result<ResultTable, CliError> {
    let config = config_of(cli)?;
    commands::execute(cli, config)
}

/// Splits `key=v1,v2,...` and returns one argument vector per value with
/// `--key value` substituted, ordered by numeric value.
fn sweep_points(args: &[OsString], request: &str) -> Result<Vec<(String, Vec<OsString>)>, CliError> {
    let (key, values) = request
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("--sweep expects key=v1,v2,..., got `{request}`")))?;
    let flag = format!("--{key}");
    let mut base: Vec<OsString> = Vec::new();
    let mut i = 0;
    while i < args.len() {
        let a = args[i].to_string_lossy();
        if a == "--sweep" || a == flag {
            i += 2;
            continue;
        }
        if a.starts_with("--sweep=") || a.starts_with(&format!("{flag}=")) {
            i += 1;
            continue;
        }
        base.push(args[i].clone());
        i += 1;
    }
    let mut points = Vec::new();
    for v in values.split(',') {
        let parsed = parse_num(v).map_err(CliError::Usage)?;
        let mut argv = base.clone();
        argv.push(flag.clone().into());
        argv.push(v.into());
        points.push((parsed.value, v.to_string(), argv));
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(points.into_iter().map(|(_, v, a)| (v, a)).collect())
}

fn run_sweep(args: &[OsString], cli: &Cli, request: &str) -> Result<ResultTable, CliError> {
    let points = sweep_points(args, request)?;
    let results: Vec<Result<(String, ResultTable), CliError>> = points
        .into_par_iter()
        .map(|(value, argv)| {
            let sub = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?;
            run_one(&sub).map(|t| (value, t))
        })
        .collect();
    let mut out = ResultTable::new("sweep", config_of(cli)?);
    let mut summaries = Vec::new();
    for r in results {
        let (value, t) = r?;
        if out.columns.is_empty() {
            out.metadata.command = format!("{} (sweep)", t.metadata.command);
            out.metadata.conventions = t.metadata.conventions.clone();
            out.columns = std::iter::once("sweep_value".to_string())
                .chain(t.columns.iter().cloned())
                .collect();
        }
        for row in t.rows {
            let mut r = vec![json!(value)];
            r.extend(row);
            out.rows.push(r);
        }
        summaries.push(json!({ "value": value, "summary": t.summary }));
    }
    out.set("points", summaries);
    Ok(out)
}

/// Parses `args` (including the program name), runs the command and writes
/// the result to `out` or a diagnostic to `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = match &cli.sweep {
        Some(request) => run_sweep(&args, &cli, request),
        None => run_one(&cli),
    };
    match result {
        Ok(table) => {
            let written = match cli.format {
                Format::Json => table.write_json(out),
                Format::Csv => table.write_csv(out),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "qms: failed to write output: {e}");
                    1
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "qms: {e}");
            e.exit_code()
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
