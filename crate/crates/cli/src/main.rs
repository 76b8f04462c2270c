use std::process::ExitCode;

use clap::Parser;
use umbra_cli::args::{Cli, CommandArgs, OutputArgs};
use umbra_cli::report::Command;
use umbra_cli::{commands, emit, render, CliError, Format, ReportDocument};
use umbra_cli::{EXIT_CHECK_FAILED, EXIT_OK, EXIT_ROW_ERROR};

fn finish(doc: ReportDocument, output: &OutputArgs, default_format: Format, fail_code: i32) -> Result<i32, CliError> {
    let text = render(&doc, output.format.unwrap_or(default_format))?;
    emit(&text, output.out.as_deref())?;
    Ok(if doc.all_ok() { EXIT_OK } else { fail_code })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        CommandArgs::Eval(a) => {
            let doc = commands::timed(a.output.timing, || commands::run_eval(&a, Command::Eval))?;
            finish(doc, &a.output, Format::Json, EXIT_ROW_ERROR)
        }
        CommandArgs::Table(a) => {
            let doc = commands::timed(a.output.timing, || commands::run_eval(&a, Command::Table))?;
            finish(doc, &a.output, Format::Csv, EXIT_ROW_ERROR)
        }
        CommandArgs::Verify(a) => {
            let doc = commands::timed(a.output.timing, || commands::run_verify(&a))?;
            finish(doc, &a.output, Format::Json, EXIT_CHECK_FAILED)
        }
        CommandArgs::Sample(a) => {
            let doc = commands::timed(a.output.timing, || commands::run_sample(&a))?;
            finish(doc, &a.output, Format::Json, EXIT_ROW_ERROR)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("umbra: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
