use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use edss_cli::commands::{ensure_writable, execute, is_usage_error, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = execute(cli).and_then(|o| {
        ensure_writable(&o.out)?;
        match &o.out {
            Some(path) => std::fs::write(path, &o.text)?,
            None => std::io::stdout().write_all(o.text.as_bytes())?,
        }
        Ok(o.success)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("edss: one or more checks failed");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("edss: {e:#}");
            ExitCode::from(if is_usage_error(&e) { 2 } else { 1 })
        }
    }
}
