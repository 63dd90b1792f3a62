use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = homcode_cli::run(std::env::args_os(), &mut io::stdin().lock());
    // a closed pipe downstream is not our failure
    let _ = io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.exit_code as u8)
}
