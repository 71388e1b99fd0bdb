mod args;
mod commands;
mod output;
mod schema;

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format};
use commands::Context;
use output::Failure;

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let outcome = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    outcome.map_err(|e| Failure { kind: "io", detail: format!("cannot read {path}: {e}") })?;
    Ok(text)
}

fn write_output(path: &str, body: &str) -> Result<(), Failure> {
    let outcome = if path == "-" {
        std::io::stdout().lock().write_all(body.as_bytes())
    } else {
        std::fs::write(path, body)
    };
    outcome.map_err(|e| Failure { kind: "io", detail: format!("cannot write {path}: {e}") })
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let format = cli.format.unwrap_or(if cli.command == Command::Curve { Format::Csv } else { Format::Json });
    if format == Format::Csv && cli.command != Command::Curve {
        return Err(Failure::validation(format!("`{}` has no CSV form", cli.command.name())));
    }
    let input = read_input(&cli.input)?;
    let ctx = Context { alpha: cli.alpha, base: cli.base, tol: cli.tol, seed: cli.seed };
    let report = commands::run(cli.command, &ctx, &input)?;
    let body = match format {
        Format::Csv => report.csv(cli.base).expect("curve reports carry a table"),
        Format::Json => {
            let doc = report.document(cli.base, cli.seed);
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("values serialize"))
        }
    };
    write_output(&cli.output, &body)
}

fn fail(f: &Failure) -> ExitCode {
    eprintln!("{}", f.document());
    ExitCode::from(f.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let detail = e.render().to_string().trim().to_string();
            return fail(&Failure::validation(detail));
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => fail(&f),
    }
}
