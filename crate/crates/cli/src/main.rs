mod commands;
mod input;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exit statuses.
pub const OK: u8 = 0;
pub const REJECTED: u8 = 2;
pub const USAGE: u8 = 64;
pub const DATA: u8 = 65;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: USAGE, message: message.into() }
    }

    pub fn data(message: impl Into<String>) -> Self {
        CliError { code: DATA, message: message.into() }
    }

    pub fn rejected(message: impl Into<String>) -> Self {
        CliError { code: REJECTED, message: message.into() }
    }
}

/// What a command produced: bytes for the output, and a status that may
/// still be nonzero (a rejection that comes with a report).
pub struct Output {
    pub text: String,
    pub code: u8,
}

#[derive(Parser, Debug)]
#[command(name = "frieze", version, about = "Frieze patterns, their classification and triangulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutputArg {
    /// Write to this file instead of stdout.
    #[arg(short, long, value_name = "PATH")]
    output: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate a frieze as TSV.
    Generate {
        /// Quiddity entries of one period, or `-` for stdin.
        #[arg(value_name = "ENTRY")]
        seq: Vec<String>,
        /// Comma-separated finite window; the row is 2 outside it.
        #[arg(long, value_name = "A,B,..", conflicts_with = "seq")]
        window: Option<String>,
        /// Index of the first window entry.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 6)]
        depth: i64,
        /// First and last column `i`, as `A:B`.
        #[arg(long, value_name = "A:B", allow_hyphen_values = true)]
        columns: Option<String>,
        /// Tabulate even if the row does not define a frieze.
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Classify a periodic quiddity sequence.
    Classify {
        #[arg(value_name = "ENTRY", required = true)]
        seq: Vec<String>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Build a triangulation whose quiddity is the given row.
    Realize {
        #[arg(value_name = "ENTRY")]
        seq: Vec<String>,
        /// Finite friezes: triangulate the polygon.
        #[arg(long)]
        polygon: bool,
        #[arg(long, value_name = "A,B,..", conflicts_with_all = ["seq", "polygon"])]
        window: Option<String>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
        /// Also write an SVG drawing here.
        #[arg(long, value_name = "PATH")]
        svg: Option<String>,
        #[arg(long = "winding-bound", value_name = "W")]
        winding_bound: Option<i64>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Check a triangulation file and compare matchings with its frieze.
    Verify {
        #[arg(value_name = "FILE")]
        file: String,
        #[arg(long, default_value_t = 6)]
        depth: i64,
        #[arg(long = "winding-bound", value_name = "W")]
        winding_bound: Option<i64>,
        /// Worker threads for the matching sweep.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Draw a triangulation file as SVG.
    Render {
        #[arg(value_name = "FILE")]
        file: String,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Matching counts and the frieze entry for one pair (i, j) of a strip.
    Oracle {
        #[arg(value_name = "FILE")]
        file: String,
        #[arg(allow_hyphen_values = true)]
        i: i64,
        #[arg(allow_hyphen_values = true)]
        j: i64,
        #[command(flatten)]
        out: OutputArg,
    },
}

fn run(cli: Cli) -> Result<(Output, Option<String>), CliError> {
    use commands::*;
    let (result, out) = match cli.command {
        Command::Generate { seq, window, lo, depth, columns, force, out } => {
            (generate(&GenerateArgs { seq, window, lo, depth, columns, force }), out)
        }
        Command::Classify { seq, out } => (classify(&seq), out),
        Command::Realize { seq, polygon, window, lo, svg, winding_bound, out } => {
            (realize(&RealizeArgs { seq, polygon, window, lo, svg, winding_bound }), out)
        }
        Command::Verify { file, depth, winding_bound, jobs, out } => (verify(&file, depth, winding_bound, jobs), out),
        Command::Render { file, out } => (render(&file), out),
        Command::Oracle { file, i, j, out } => (oracle(&file, i, j), out),
    };
    Ok((result?, out.output))
}

fn emit(text: &str, path: Option<&str>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    match run(cli) {
        Ok((output, path)) => {
            if let Err(e) = emit(&output.text, path.as_deref()) {
                eprintln!("frieze: {e}");
                return ExitCode::from(USAGE);
            }
            ExitCode::from(output.code)
        }
        Err(e) => {
            eprintln!("frieze: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
