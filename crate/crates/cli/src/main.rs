use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use qmacdo::{suites, Cli, ReportFormat, SuiteConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match SuiteConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let report = suites::run(&cfg);
    let text = match cli.report {
        ReportFormat::Lines => report.to_lines(),
        ReportFormat::Table => report.to_table(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    eprintln!("{}", report.summary(start.elapsed()));
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
