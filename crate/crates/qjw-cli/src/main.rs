#![forbid(unsafe_code)]

use clap::Parser;
use qjw_cli::{run, write_atomic, Cli};
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("qjw: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match &cli.output {
        Some(path) => write_atomic(path, &outcome.rendered),
        None => std::io::stdout()
            .write_all(outcome.rendered.as_bytes())
            .map_err(|source| qjw_cli::CliError::Io { path: "<stdout>".into(), source }),
    };
    if let Err(e) = written {
        eprintln!("qjw: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    if !outcome.ok {
        eprintln!("qjw: {}", outcome.message.as_deref().unwrap_or("verification failed"));
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
