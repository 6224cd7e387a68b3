use std::process::ExitCode;

use clap::Parser;
use committee_cli::app::{run, Cli};

fn main() -> ExitCode {
    run(Cli::parse())
}
