use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use opz_cli::{run, Cli, Outcome, ERROR_EXIT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(ERROR_EXIT as u8),
            };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            if let Outcome::Sweep(verdict) = outcome {
                match verdict.offending() {
                    Some((k, i)) => eprintln!("verdict: {} (zero {}, grid step {})", verdict.name(), k + 1, i),
                    None => eprintln!("verdict: {}", verdict.name()),
                }
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(ERROR_EXIT as u8)
        }
    }
}
