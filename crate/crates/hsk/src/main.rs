use std::process::ExitCode;

use clap::Parser;
use hsk::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("hsk: {e}");
            return ExitCode::from(2);
        }
    };
    let common = cli.command.common();
    let text = report.render(common.format);
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("hsk: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("hsk: breach: {} = {:e} (threshold {:e})", c.name, c.value, c.threshold);
    }
    ExitCode::from(if report.passed { 0 } else { 1 })
}
