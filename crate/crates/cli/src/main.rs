mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::commands::{CliError, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match commands::execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    if let Err(e) = output::write(&outcome.output, cli.global.format, cli.global.out.as_deref()) {
        eprintln!("error: {}", CliError::Io(e));
        return ExitCode::from(1);
    }
    match outcome.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::NonConvergence => {
            eprintln!("error: root finding did not reach the requested tolerance");
            ExitCode::from(3)
        }
        Status::Failed => {
            eprintln!("error: verification failed");
            ExitCode::from(4)
        }
    }
}
