//! `supersep` command-line front end.
//!
//! Exit status: 0 on success, 2 on invalid input or unusable files, 3 when a
//! computed result breaks a numerical contract.

mod args;
mod commands;
mod config;
mod output;
mod units;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
