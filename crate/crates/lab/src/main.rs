use std::io::Write;
use std::process::ExitCode;

use alcove_lab::cli::{configure_threads, run, RunConfig};
use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = configure_threads().and_then(|()| run(&cfg)).and_then(|outcome| {
        match &cfg.out {
            Some(path) => std::fs::write(path, &outcome.output)?,
            None => std::io::stdout().write_all(&outcome.output)?,
        }
        Ok(outcome.status)
    });
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
