mod args;
mod commands;
mod error;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;
use report::Report;

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let c = &cli.common;
    match &cli.command {
        Command::Dispersion(a) => commands::dispersion(c, a),
        Command::Momentum(a) => commands::momentum(c, a),
        Command::Pressure(a) => commands::pressure(c, a),
        Command::Phasematch(a) => commands::phasematch(c, a),
        Command::Fock(a) => commands::fock(c, a),
        Command::Wavepacket(a) => commands::wavepacket(c, a),
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let text = report.render(cli.common.output)?;
    match &cli.common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Io {
                path: "<stdout>".into(),
                source: e,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|report| {
        emit(&cli, &report)?;
        Ok(report.failure)
    });
    match result {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(msg)) => {
            eprintln!("dmom: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("dmom: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
