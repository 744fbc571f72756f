use std::process::ExitCode;

use clap::Parser;
use rankgpt_cli::Cli;

fn main() -> ExitCode {
    match rankgpt_cli::run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
