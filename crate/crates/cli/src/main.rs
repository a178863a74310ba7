use std::process::ExitCode;

use clap::Parser;
use symbidisc::{emit, run, Cli, CliError};

fn fail(e: &CliError) -> ExitCode {
    let doc = serde_json::to_string(&e.document()).unwrap_or_else(|_| e.to_string());
    eprintln!("{doc}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::new("usage", e.to_string().trim_end())),
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if let Err(e) = emit(&cli, &report) {
        return fail(&e);
    }
    ExitCode::from(report.exit_code() as u8)
}
