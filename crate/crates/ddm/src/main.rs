use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = ddm::cli::Cli::parse();
    match ddm::cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
