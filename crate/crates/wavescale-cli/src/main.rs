use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = wavescale_cli::Cli::parse(); // clap exits with 2 on usage errors
    match wavescale_cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}
