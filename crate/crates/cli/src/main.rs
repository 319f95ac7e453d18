//! `vc`: run, generate, solve, sweep and replay from the command line.

mod args;
mod commands;
mod error;
mod load;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { input, trace, json } => commands::run(&input, trace.as_deref(), json),
        Command::Gen { kind, params, seed, format, output } => {
            commands::gen(kind, &params, seed, format, output.as_deref())
        }
        Command::Oracle { input, json } => commands::oracle(&input, json),
        Command::Sweep { input, format, trials, seed, json } => commands::sweep(&input, format, trials, seed, json),
        Command::Verify { input, trace, json } => commands::verify(&input, &trace, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
