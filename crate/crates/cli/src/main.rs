use clap::Parser;

use teugels_cli::{exit_code, run, Cli};

fn main() {
    let result = run(Cli::parse());
    if let Err(e) = &result {
        eprintln!("{e}");
    }
    std::process::exit(exit_code(&result));
}
