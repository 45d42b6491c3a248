use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use netgood_cli::{run, Cli, TOL_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env_tol = std::env::var(TOL_ENV).ok();
    let mut stdout = std::io::stdout().lock();
    let code = match run(cli, env_tol.as_deref()) {
        Ok(resp) => {
            let _ = stdout.write_all(resp.stdout.as_bytes());
            resp.code
        }
        Err(e) => {
            if let Some(partial) = e.partial_report() {
                let _ = stdout.write_all(partial.as_bytes());
            }
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    let _ = stdout.flush();
    ExitCode::from(code as u8)
}
