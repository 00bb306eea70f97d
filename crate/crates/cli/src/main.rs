use std::io::Write;
use std::process::ExitCode;

use altfid_cli::{execute, Cli, Exit};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(Exit::Usage.code() as u8);
        }
    }
    let out = match execute(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit.code() as u8);
        }
    };
    let written = match &out.path {
        Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(out.text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(Exit::Usage.code() as u8);
    }
    if out.exit != Exit::Success {
        eprintln!("error: hard assertion failed");
    }
    ExitCode::from(out.exit.code() as u8)
}
