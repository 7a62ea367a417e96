use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lusin::cli::{exit_code, load_config, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = load_config(&cli, &mut std::io::stdin()).and_then(|cfg| run(&cli, &cfg));
    let code = exit_code(&result);
    match result {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &outcome.csv),
                None => std::io::stdout().lock().write_all(outcome.csv.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            if !outcome.summary.is_empty() {
                eprintln!("{}", outcome.summary);
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(code as u8)
}
