//! `citegraph` command-line front end.
//!
//! Exit status: 0 success, 1 usage error, 2 data error, 3 a solver did not
//! converge (the report is still written).

mod args;
mod commands;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use citegraph::io::LoadReport;
use citegraph::report::Format;
use citegraph::Execution;

use args::{Cli, ExecArg, OutputFormat};
use commands::{Ctx, Outcome};

const USAGE: u8 = 1;
const DATA: u8 = 2;
const NOT_CONVERGED: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(USAGE),
            };
        }
    };

    let mut ctx = Ctx {
        strict: cli.global.strict,
        exec: match cli.global.exec {
            ExecArg::Auto => Execution::Auto,
            ExecArg::Sequential => Execution::Sequential,
            ExecArg::Parallel => Execution::Parallel,
        },
        warnings: LoadReport::default(),
    };
    let result = commands::run(&cli.command, &mut ctx);
    for w in &ctx.warnings.warnings {
        eprintln!("warning: skipped {w}");
    }
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(DATA);
        }
    };
    if let Err(e) = emit(&cli, &outcome) {
        eprintln!("error: {e}");
        return ExitCode::from(DATA);
    }
    if outcome.converged {
        ExitCode::SUCCESS
    } else {
        eprintln!("warning: iteration limit reached before convergence");
        ExitCode::from(NOT_CONVERGED)
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> std::io::Result<()> {
    let selected = if cli.global.json {
        Format::Json
    } else {
        match cli.global.format {
            OutputFormat::Text => Format::Text,
            OutputFormat::Csv => Format::Csv,
        }
    };
    match &cli.global.out_dir {
        None => std::io::stdout().write_all(outcome.report.render(selected).as_bytes()),
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let mut formats = vec![Format::Text, Format::Csv];
            if cli.global.json {
                formats.push(Format::Json);
            }
            for f in formats {
                let path = dir.join(format!("{}.{}", outcome.name, f.extension()));
                fs::write(path, outcome.report.render(f))?;
            }
            Ok(())
        }
    }
}
