// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use clap::Parser;
use photonloss_cli::{run, Cli};

fn main() -> ExitCode {
    // clap exits with 2 on flag errors and 0 for --help / --version.
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
