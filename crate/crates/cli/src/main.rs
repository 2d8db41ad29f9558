//! `braidimage` command-line driver.
//!
//! Exit codes: 0 certified (or plain success), 1 refuted, 2 inconclusive or
//! capped, 64 usage error, 65 parameter gate rejection, 70 internal failure.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Why a command could not produce a report.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Gate(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Gate(_) => 65,
            Failure::Internal(_) => 70,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("usage error: {m}"),
                Failure::Gate(m) => eprintln!("parameter gate rejected: {m}"),
                Failure::Internal(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
