use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use grada::scenario::{builtin_names, render_text, run, OutputFormat, Scenario};

/// Runs a graded-ring classification scenario and prints the report.
///
/// Exit status: 0 when every check ran and matched its expectation,
/// 2 on an expectation mismatch or an internal inconsistency, 1 on input errors.
#[derive(Parser, Debug)]
#[command(name = "grada", version)]
struct Args {
    /// Scenario file (JSON).
    #[arg(long, required_unless_present = "list_builtins")]
    scenario: Option<PathBuf>,
    /// Override the scenario's enumeration bound.
    #[arg(long)]
    bound: Option<usize>,
    /// Report format: text or structured.
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Print the built-in ring names and exit.
    #[arg(long)]
    list_builtins: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if args.list_builtins {
        for name in builtin_names() {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }
    let path = args.scenario.expect("clap enforces --scenario");
    let scenario = match Scenario::load(&path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let report = match run(&scenario, args.bound) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match args.format.unwrap_or(scenario.output) {
        OutputFormat::Text => print!("{}", render_text(&report)),
        OutputFormat::Structured => println!("{}", report.to_json()),
    }
    if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
