use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use bsroots::weyl::Bounds;
use bsroots_cli::{run_json, CliError, Format, Options, EXIT_FAILURE, EXIT_SCHEMA};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

/// Reads a problem description (JSON) and prints a report.
#[derive(Debug, Parser)]
#[command(name = "bsroots", version)]
struct Args {
    /// Problem file; stdin when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Report file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Largest ℓ in candidate families.
    #[arg(long)]
    ell_max: Option<u32>,
    /// Oracle search bounds as "ord,deg,sdeg,bdeg".
    #[arg(long)]
    bounds: Option<String>,
    /// Largest exponent in monomial enumerations.
    #[arg(long)]
    cap: Option<u32>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let format = match args.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    let code = match execute(&args, format) {
        Ok(()) => 0,
        Err(e) => {
            let msg = match format {
                Format::Json => e.to_json(),
                Format::Text => format!("{e}\n"),
            };
            let _ = io::stderr().write_all(msg.as_bytes());
            e.code
        }
    };
    ExitCode::from(code as u8)
}

fn execute(args: &Args, format: Format) -> Result<(), CliError> {
    let bounds = match &args.bounds {
        Some(s) => Some(s.parse::<Bounds>().map_err(|e| CliError {
            code: EXIT_SCHEMA,
            kind: "schema".into(),
            path: "--bounds".into(),
            message: e.to_string(),
        })?),
        None => None,
    };
    let opts = Options {
        ell_max: args.ell_max,
        bounds,
        cap: args.cap,
    };
    let src = match &args.input {
        Some(path) => fs::read_to_string(path).map_err(|e| io_error("--input", e))?,
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| io_error("stdin", e))?;
            s
        }
    };
    let report = run_json(&src, &opts)?.render(format);
    match &args.output {
        Some(path) => fs::write(path, report).map_err(|e| io_error("--output", e)),
        None => io::stdout()
            .write_all(report.as_bytes())
            .map_err(|e| io_error("stdout", e)),
    }
}

fn io_error(path: &str, e: io::Error) -> CliError {
    CliError {
        code: EXIT_FAILURE,
        kind: "io".into(),
        path: path.into(),
        message: e.to_string(),
    }
}
