use std::io::Write;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

fn main() -> ExitCode {
    let cli = match nilcrunch_cli::parse(std::env::args_os()) {
        Ok(cli) => cli,
        Err((code, text)) => {
            if code == 0 {
                print!("{text}");
            } else {
                eprint!("{text}");
            }
            return ExitCode::from(code as u8);
        }
    };
    let cancel = Arc::new(AtomicBool::new(false));
    let flag = cancel.clone();
    // the build notices the flag between batches and writes its checkpoint
    if let Err(e) = ctrlc::set_handler(move || flag.store(true, Ordering::Relaxed)) {
        eprintln!("warning: no interrupt handler: {e}");
    }
    let outcome = nilcrunch_cli::run(cli, &cancel);
    if let Some(report) = &outcome.report {
        match report.render(outcome.format) {
            Ok(text) => {
                let mut out = std::io::stdout().lock();
                let _ = out.write_all(text.as_bytes());
                let _ = out.flush();
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(nilcrunch_cli::EXIT_BAD_INPUT as u8);
            }
        }
    }
    if let Some(msg) = &outcome.message {
        eprintln!("error: {msg}");
    }
    ExitCode::from(outcome.code as u8)
}
