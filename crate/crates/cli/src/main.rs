mod args;
mod cache;
mod check;
mod commands;
mod error;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;
use error::CliError;

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let cache = cli.cache_dir.as_deref();
    match &cli.command {
        Command::Basis(a) => commands::basis(a, cli.format, cache),
        Command::Dims(a) => commands::dims(a, cli.format, cache),
        Command::Gram(a) => commands::gram(a, cli.format),
        Command::Rep(a) => commands::rep(a, cli.format, cache),
        Command::Ybe(a) => commands::ybe(a, cli.format),
        Command::Check(a) => {
            if cli.format != args::Format::Json {
                return Err(CliError::Usage("`check` output is JSON only".into()));
            }
            let report = check::run(a);
            let failed = report.failed;
            Ok(Outcome {
                text: commands::to_json(&report),
                failure: (failed > 0).then(|| format!("{failed} properties failed")),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            match out.failure {
                None => ExitCode::SUCCESS,
                Some(why) => {
                    eprintln!("error: {why}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
