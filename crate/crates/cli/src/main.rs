use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use unitri_cli::{run, Cli};

fn main() -> ExitCode {
    let out = run(&Cli::parse());
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", out.stderr);
    ExitCode::from(out.code)
}
