use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use weightlab_cli::{run, tolerance_from_env, Cli, Format};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let env = std::env::var("WEIGHTLAB_EPS").ok();
    let outcome = tolerance_from_env(env.as_deref()).and_then(|tol| run(&cli.command, tol));
    match outcome {
        Ok((doc, code)) => {
            let mut out = std::io::stdout().lock();
            match cli.format {
                Format::Json => {
                    let _ = writeln!(out, "{}", doc.to_json());
                }
                Format::Human => {
                    let _ = write!(out, "{}", doc.to_human());
                    for d in &doc.diagnostics {
                        eprintln!("note: {d}");
                    }
                }
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
