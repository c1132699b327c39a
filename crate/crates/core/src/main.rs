use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = qlmass::cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(result.payload.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(2);
    }
    for line in &result.diagnostics {
        eprintln!("{line}");
    }
    ExitCode::from(result.status as u8)
}
