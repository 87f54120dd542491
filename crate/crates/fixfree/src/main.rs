use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use fixfree::args::{Cli, Command, Format};
use fixfree::exit;
use fixfree::report::{write_csv, write_json, Report};

fn emit(cli: &Cli, report: &Report) -> anyhow::Result<()> {
    let format = cli.format.unwrap_or(match cli.command {
        Command::Series(_) => Format::Csv,
        _ => Format::Json,
    });
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match format {
        Format::Json => write_json(&mut out, &serde_json::to_value(&cli.command)?, report)?,
        Format::Csv => write_csv(&mut out, report)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = fixfree::run(&cli).and_then(|report| emit(&cli, &report).map(|()| report));
    match result {
        Ok(report) if report.failed() => {
            eprintln!("fixfree: verification failed; failing cases ({}):", report.columns.join(", "));
            for row in report.failing_rows() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                eprintln!("  {}", cells.join(", "));
            }
            ExitCode::from(exit::FAIL)
        }
        Ok(_) => ExitCode::from(exit::PASS),
        Err(e) => {
            eprintln!("fixfree: {e:#}");
            ExitCode::from(exit::code_for(&e))
        }
    }
}
