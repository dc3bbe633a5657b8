//! Library half of the `eqec` binary: argument parsing, the verification
//! suites and report rendering.

use std::io::Write;
use std::time::Instant;

pub mod commands;
pub mod config;
pub mod report;
pub mod suites;

use config::{Cli, Command, Format, RunConfig};
use report::SuiteReport;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs the selected command and stamps the wall time.
pub fn run(command: &Command, cfg: &RunConfig) -> SuiteReport {
    let start = Instant::now();
    let mut report = match *command {
        Command::Verify { target } => suites::verify(target, cfg),
        Command::Simulate { code } => commands::cmd_simulate(code, cfg),
        Command::Demo { name } => commands::cmd_demo(name, cfg),
    };
    report.set_wall_time(start.elapsed());
    report
}

pub fn render(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    }
}

/// Runs `cli`, writes the report and returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    let cfg = RunConfig::from(&cli.run);
    let report = run(&cli.command, &cfg);
    let body = render(&report, cli.run.format);
    let written = match &cli.run.out {
        Some(path) => std::fs::write(path, &body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    };
    match written {
        Err(e) => {
            eprintln!("eqec: {e}");
            EXIT_USAGE
        }
        Ok(()) if report.passed() => EXIT_PASS,
        Ok(()) => EXIT_FAIL,
    }
}
