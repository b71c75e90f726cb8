/*
 * SPDX-License-Identifier: Apache-2.0
 */

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use spocode::{execute, Command, Format, Request};

/// Analyses of subshifts given by presentation files.
#[derive(Parser, Debug)]
#[command(name = "spocode", version)]
struct Cli {
    /// Presentation file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    command: Command,
    /// Word length bound (enumeration length, code truncation, window).
    #[arg(long, default_value_t = 8)]
    max_len: usize,
    /// Context depth for follower and predecessor sets.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Seed for sampled windows.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Report destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// A word, as comma-separated symbol names (or plain when every
    /// symbol is one character).
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
    /// With `lang`: also write the table as `length<TAB>word` lines.
    #[arg(long)]
    table: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let req = Request {
        input: cli.input,
        command: cli.command,
        max_len: cli.max_len,
        depth: cli.depth,
        seed: cli.seed,
        format: cli.format,
        out: cli.out,
        word: cli.word,
        table: cli.table,
    };
    match execute(&req) {
        Ok(body) => {
            let _ = std::io::stdout().write_all(body.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("spocode: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
