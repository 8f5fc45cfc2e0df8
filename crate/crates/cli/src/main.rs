use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qcorr_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("qcorr: {e}");
            return ExitCode::from(e.code());
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.body),
        None => std::io::stdout().lock().write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("qcorr: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if let Some(s) = &outcome.summary {
        eprintln!("{s}");
    }
    ExitCode::from(outcome.status.code())
}
