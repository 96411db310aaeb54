mod cli;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use cli::{Cli, Command};
use commands::{Failure, Outcome};

/// Worker threads for parallel computations; defaults to all cores.
const THREADS_ENV: &str = "WIENER_THREADS";

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_ENV}={value:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Domain(e.to_string()))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    configure_threads()?;
    let g = &cli.global;
    match &cli.command {
        Command::Table(a) => commands::table(a, g.format, g.unsafe_caps),
        Command::Verify(a) => commands::verify(a, g.format),
        Command::Series(a) => commands::series(a, g.format, g.unsafe_caps),
        Command::Sample(a) => commands::sample(a, g.format),
        Command::Weyl(a) => commands::weyl(a, g.format, g.unsafe_caps),
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.global.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli, &outcome.text) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.status)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
