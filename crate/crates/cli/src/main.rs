mod args;
mod commands;
mod error;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Fit(a) => commands::cmd_fit(a),
        Command::Forecast(a) => commands::cmd_forecast(a),
        Command::Evaluate(a) => commands::cmd_evaluate(a),
        Command::Sweep(a) => commands::cmd_sweep(a),
        Command::Reproduce(a) => commands::cmd_reproduce(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Reproduction { report, failures } = &e {
                print!("{report}");
                eprintln!("failures:");
                for f in failures {
                    eprintln!("  {f}");
                }
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
