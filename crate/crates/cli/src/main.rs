mod args;
mod commands;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use commands::{CliError, Outcome};

const EXIT_USAGE: u8 = 64;

/// Honors `AMPLE_FORGE_THREADS`; unset or unparsable leaves rayon's default.
fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("AMPLE_FORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "AMPLE_FORGE_THREADS must be a positive integer, got '{v}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))
}

fn render(out: &Outcome, g: &args::Global) -> String {
    if g.json {
        let mut s = serde_json::to_string_pretty(&out.json).expect("json values print");
        s.push('\n');
        s
    } else if g.tsv {
        out.tsv.clone().unwrap_or_else(|| out.text.clone())
    } else {
        out.text.clone()
    }
}

fn emit(body: &str, g: &args::Global) -> Result<(), CliError> {
    match &g.output {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not worth an error.
            let _ = stdout.write_all(body.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = configure_threads()
        .and_then(|_| commands::run(&cli.command, &cli.global))
        .and_then(|out| emit(&render(&out, &cli.global), &cli.global).map(|_| out.exit));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("ample-forge: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
