use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use adc_cli::{run, Cli, CliError};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli, &mut io::stdin().lock()).and_then(|out| {
        match &cli.output {
            Some(path) => fs::write(path, &out.text).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?,
            None => io::stdout()
                .write_all(out.text.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?,
        }
        Ok(out.status)
    });
    match result {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("adc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
