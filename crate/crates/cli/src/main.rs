use clap::Parser;
use std::io::Write;
use std::process::ExitCode;
use stirling_cert::Error;
use stirling_cert_cli::{run, Cli, Status};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            match out.status {
                Status::Success => ExitCode::SUCCESS,
                Status::VerificationFailed => ExitCode::from(2),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::PrecisionBudget { .. })));
            ExitCode::from(if budget { 3 } else { 1 })
        }
    }
}
