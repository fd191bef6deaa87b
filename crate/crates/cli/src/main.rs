mod args;
mod commands;
mod error;
mod input;
mod reproduce;
mod stats;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::Cli;
use stats::StatsReport;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    match commands::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.flush();
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            if cli.stats {
                let report = StatsReport {
                    operation: commands::operation_name(&cli.cmd).to_string(),
                    inputs: out.inputs,
                    outputs: out.outputs,
                    wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
                };
                eprintln!("{}", report.to_json());
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
