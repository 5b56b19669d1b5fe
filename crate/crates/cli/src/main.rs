//! `udr`: command-line driver for the uncertainty-disturbance toolkit.
//!
//! Exit codes: 0 completed (relation holds, no counterexample), 1 violation
//! or counterexample found, 2 input error.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use commands::Outcome;

#[derive(Debug)]
pub struct CliError(String);

impl CliError {
    pub fn input(msg: String) -> Self {
        Self(msg)
    }
}

fn one_line(msg: &str) -> String {
    msg.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("error: {}", one_line(first.trim_start_matches("error:").trim()));
            return ExitCode::from(2);
        }
    };
    match commands::run(&cli) {
        Ok(Outcome::Completed) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(CliError(msg)) => {
            eprintln!("error: {}", one_line(&msg));
            ExitCode::from(2)
        }
    }
}
